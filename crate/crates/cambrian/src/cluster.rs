//! The cluster complex attached to a Coxeter element, read off from the
//! facet labels of the generalized associahedron.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::fans::{cl_label, AlmostPositiveRoot, CambrianFan};
use crate::polytopes::Polytope;
use crate::{Error, Result};

type Face = BTreeSet<AlmostPositiveRoot>;

pub struct ClusterComplex {
    pub fan: Arc<CambrianFan>,
    /// One facet per maximal cone, in cone order: the n labels of its rays.
    pub facets: Vec<Face>,
    /// Every almost positive root, in ray order.
    pub ground: Vec<AlmostPositiveRoot>,
}

impl ClusterComplex {
    pub fn build(fan: Arc<CambrianFan>) -> Result<ClusterComplex> {
        let sys = &fan.data.sys;
        let n = sys.rank();
        let mut facets = Vec::with_capacity(fan.cones.len());
        for cone in &fan.cones {
            let facet: Face = cone
                .rays
                .iter()
                .map(|&r| fan.rays[r].label.expect("every ray is labeled"))
                .collect();
            if facet.len() != n {
                return Err(Error::LabelConflict(format!(
                    "facet of cone {} has {} labels",
                    cone.sortable,
                    facet.len()
                )));
            }
            // the ray labels of the cone of w are exactly its label set
            let w = &fan.data.group.elements[cone.sortable];
            let from_labels: Face = cl_label(sys, w, &fan.data.c)?.into_iter().collect();
            if facet != from_labels {
                return Err(Error::LabelConflict(format!(
                    "cone {} rays disagree with its label set",
                    cone.sortable
                )));
            }
            facets.push(facet);
        }
        let ground: Vec<AlmostPositiveRoot> = fan
            .rays
            .iter()
            .map(|r| r.label.expect("every ray is labeled"))
            .collect();
        for (i, root) in ground.iter().enumerate() {
            if !facets.iter().any(|f| f.contains(root)) {
                return Err(Error::LabelConflict(format!(
                    "root {} (ray {i}) lies in no facet",
                    root.display(sys)
                )));
            }
        }
        Ok(ClusterComplex { fan, facets, ground })
    }

    /// Labels of the half spaces tight at a vertex of the associahedron;
    /// checked against the facet of the matching cone.
    pub fn vertex_cluster(&self, ass: &Polytope, vertex: usize) -> Result<Face> {
        let v = &ass.vertices[vertex];
        let inc = ass.incidence();
        let tight: Face = ass
            .halfspaces
            .iter()
            .enumerate()
            .filter(|&(hi, _)| inc[vertex][hi])
            .map(|(_, h)| h.label.expect("associahedron facets carry labels"))
            .collect();
        if tight != self.facets[v.tag] {
            return Err(Error::LabelConflict(format!(
                "tight facets at vertex {vertex} differ from the cluster of its cone"
            )));
        }
        Ok(tight)
    }

    /// A set of almost positive roots is compatible iff it is a face of the
    /// complex, i.e. a subset of some facet.
    pub fn is_compatible(&self, roots: &Face) -> bool {
        self.facets.iter().any(|f| roots.is_subset(f))
    }

    /// The intersection formulation: the set is the intersection of the
    /// labels of some facet collection. The smallest candidate is the
    /// intersection of every facet containing the set.
    pub fn is_compatible_via_intersections(&self, roots: &Face) -> bool {
        let containing: Vec<&Face> = self
            .facets
            .iter()
            .filter(|f| roots.is_subset(f))
            .collect();
        let Some(first) = containing.first() else {
            return false;
        };
        let mut meet: Face = (*first).clone();
        for f in &containing[1..] {
            meet = meet.intersection(f).copied().collect();
        }
        meet == *roots
    }

    /// All faces, extensionally: every subset of every facet.
    pub fn faces(&self) -> HashSet<Face> {
        let mut out: HashSet<Face> = HashSet::new();
        for facet in &self.facets {
            let elems: Vec<AlmostPositiveRoot> = facet.iter().copied().collect();
            for mask in 0u32..1 << elems.len() {
                out.insert(
                    elems
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &r)| r)
                        .collect(),
                );
            }
        }
        out
    }

    pub fn facet_strings(&self) -> Vec<Vec<String>> {
        let sys = &self.fan.data.sys;
        self.facets
            .iter()
            .map(|f| f.iter().map(|r| r.display(sys)).collect())
            .collect()
    }
}

#[derive(Debug)]
pub struct ComplexStats {
    pub facet_count: usize,
    /// Faces by cardinality, starting with the empty face.
    pub f_vector: Vec<usize>,
    /// Faces whose two compatibility formulations disagree.
    pub intersection_mismatches: Vec<String>,
}

impl ComplexStats {
    pub fn ok(&self) -> bool {
        self.intersection_mismatches.is_empty()
    }
}

pub fn complex_stats(complex: &ClusterComplex) -> ComplexStats {
    let n = complex.fan.data.sys.rank();
    assert_eq!(
        complex.facets.len(),
        complex.fan.data.sortables.len(),
        "one facet per sortable element"
    );
    let faces = complex.faces();
    let mut f_vector = vec![0usize; n + 1];
    let mut intersection_mismatches = Vec::new();
    for face in &faces {
        f_vector[face.len()] += 1;
        if !complex.is_compatible_via_intersections(face) {
            let sys = &complex.fan.data.sys;
            let names: Vec<String> = face.iter().map(|r| r.display(sys)).collect();
            intersection_mismatches.push(format!("{{{}}}", names.join(", ")));
        }
    }
    ComplexStats {
        facet_count: complex.facets.len(),
        f_vector,
        intersection_mismatches,
    }
}
