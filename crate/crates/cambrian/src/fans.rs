//! The Coxeter fan of chambers, the coarser Cambrian fan attached to a
//! Coxeter element, and the labeling of its rays by almost positive roots.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::linalg::{nonneg_combination, vec_scale, Vector};
use crate::scalar::{Rat, Scalar};
use crate::sortable::{c_sorting_word, is_c_sortable, CambrianData, CoxeterChoice};
use crate::{Error, Result};

/// A positive root or the negative of a simple root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlmostPositiveRoot {
    /// Index into the positive-root list.
    Pos(usize),
    /// Generator index s, standing for -alpha_s.
    NegSimple(usize),
}

impl AlmostPositiveRoot {
    /// Render using simple-root letters derived from the generator names,
    /// e.g. `a1+a2+a3`, `2a0+a1`, `-a2`.
    pub fn display(&self, sys: &CoxeterSystem) -> String {
        let letter = |s: usize| {
            let name = &sys.gen_names[s];
            format!("a{}", name.strip_prefix('s').unwrap_or(name))
        };
        match *self {
            AlmostPositiveRoot::NegSimple(s) => format!("-{}", letter(s)),
            AlmostPositiveRoot::Pos(i) => {
                let mut out = String::new();
                for (s, c) in sys.pos_roots[i].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !out.is_empty() {
                        out.push('+');
                    }
                    if c != &Scalar::one(&sys.field) {
                        out.push_str(&c.to_string());
                    }
                    out.push_str(&letter(s));
                }
                out
            }
        }
    }
}

/// Parse a root string as produced by `display` (coefficients must be
/// rational literals).
pub fn parse_root(sys: &CoxeterSystem, text: &str) -> Result<AlmostPositiveRoot> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('-') {
        let s = sys
            .gen_names
            .iter()
            .position(|g| {
                let letter = format!("a{}", g.strip_prefix('s').unwrap_or(g));
                letter == rest.trim()
            })
            .ok_or_else(|| Error::Parse(format!("unknown simple root {rest}")))?;
        return Ok(AlmostPositiveRoot::NegSimple(s));
    }
    let mut coords = vec![Scalar::zero(&sys.field); sys.rank()];
    for term in text.split('+') {
        let term = term.trim();
        let apos = term
            .find('a')
            .ok_or_else(|| Error::Parse(format!("bad root term {term}")))?;
        let (coef, root) = term.split_at(apos);
        let s = sys
            .gen_names
            .iter()
            .position(|g| format!("a{}", g.strip_prefix('s').unwrap_or(g)) == root)
            .ok_or_else(|| Error::Parse(format!("unknown simple root {root}")))?;
        let c = if coef.is_empty() {
            Scalar::one(&sys.field)
        } else {
            let r: Rat = coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {coef}")))?;
            Scalar::from_rat(&sys.field, r)
        };
        coords[s] = &coords[s] + &c;
    }
    sys.pos_roots
        .iter()
        .position(|r| r == &coords)
        .map(AlmostPositiveRoot::Pos)
        .ok_or_else(|| Error::Parse(format!("{text} is not a positive root")))
}

/// An extremal ray of a fan.
#[derive(Clone, Debug)]
pub struct Ray {
    /// Primitive direction in the simple-root basis.
    pub dir: Vector,
    /// The unique s with dir in the W-orbit of the fundamental weight v_s.
    pub orbit: usize,
    pub label: Option<AlmostPositiveRoot>,
}

/// Coordinates of x in the weight basis: q_r = <x, alpha_r>.
pub fn weight_coords(sys: &CoxeterSystem, x: &[Scalar]) -> Vector {
    (0..sys.rank())
        .map(|r| {
            let mut alpha = vec![Scalar::zero(&sys.field); sys.rank()];
            alpha[r] = Scalar::one(&sys.field);
            sys.ip(x, &alpha)
        })
        .collect()
}

/// Primitive representative of the ray through x: for rational systems the
/// lattice point with coprime integer weight coordinates, otherwise the
/// scaling with first nonzero weight coordinate equal to one.
pub fn primitive_ray(sys: &CoxeterSystem, x: &[Scalar]) -> Vector {
    let q = weight_coords(sys, x);
    if sys.field.is_rational() {
        use num::bigint::BigInt;
        use num::{Integer, One, Zero};
        let mut lcm = BigInt::one();
        for c in &q {
            let r = c.as_rat().unwrap();
            if !r.is_zero() {
                lcm = lcm.lcm(r.denom());
            }
        }
        let mut gcd = BigInt::zero();
        for c in &q {
            let r = c.as_rat().unwrap();
            gcd = gcd.gcd(&(r.numer() * &lcm / r.denom()));
        }
        assert!(!gcd.is_zero(), "zero ray direction");
        // positive scaling: direction is preserved
        let scale = Scalar::from_rat(&sys.field, Rat::new(lcm, gcd));
        vec_scale(&scale, x)
    } else {
        let first = q.iter().find(|c| !c.is_zero()).expect("zero ray direction");
        let scale = first.inverse();
        let scale = if first.is_negative() { -scale } else { scale };
        vec_scale(&scale, x)
    }
}

/// The n rays of the chamber w(D), tagged by orbit. Directions are the
/// orbit points w(omega_s) themselves: this normalization is what makes
/// the half-space pointing identity hold with nonnegative coefficients.
pub fn chamber_rays(sys: &CoxeterSystem, w: &GroupElement) -> Vec<Ray> {
    (0..sys.rank())
        .map(|s| Ray {
            dir: sys.act_on_vector(w, &sys.weights[s]),
            orbit: s,
            label: None,
        })
        .collect()
}

/// All rays of the Coxeter fan (one per coset of a maximal parabolic).
pub fn coxeter_fan_rays(
    sys: &CoxeterSystem,
    group: &crate::coxeter::EnumeratedGroup,
) -> Vec<Ray> {
    let mut rays: Vec<Ray> = Vec::new();
    let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
    for w in &group.elements {
        for ray in chamber_rays(sys, w) {
            let key = primitive_ray(sys, &ray.dir);
            if let Some(&i) = seen.get(&key) {
                assert_eq!(rays[i].orbit, ray.orbit, "orbit tag not unique per ray");
                assert_eq!(rays[i].dir, ray.dir, "orbit points on a ray must agree");
                continue;
            }
            seen.insert(key, rays.len());
            rays.push(ray);
        }
    }
    rays
}

/// The label Lr_s(w): the image of alpha_s under the prefix of the sorting
/// word before the rightmost s, or -alpha_s when s does not occur.
pub fn lr_label(
    sys: &CoxeterSystem,
    w: &GroupElement,
    s: usize,
    c: &CoxeterChoice,
) -> Result<AlmostPositiveRoot> {
    if !is_c_sortable(sys, w, c) {
        return Err(Error::Parse("Lr label requires a sortable element".into()));
    }
    let word = c_sorting_word(sys, w, c).word();
    match word.iter().rposition(|&t| t == s) {
        None => Ok(AlmostPositiveRoot::NegSimple(s)),
        Some(j) => {
            let prefix = sys.element_from_word(&word[..j]);
            let (idx, neg) = sys.act_on_root(&prefix, s);
            assert!(!neg, "Lr label must be a positive root");
            Ok(AlmostPositiveRoot::Pos(idx))
        }
    }
}

/// The n-element label set of the maximal cone of w.
pub fn cl_label(
    sys: &CoxeterSystem,
    w: &GroupElement,
    c: &CoxeterChoice,
) -> Result<Vec<AlmostPositiveRoot>> {
    let mut labels: Vec<AlmostPositiveRoot> = (0..sys.rank())
        .map(|s| lr_label(sys, w, s, c))
        .collect::<Result<_>>()?;
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), sys.rank(), "cl label set must have n elements");
    Ok(labels)
}

/// A maximal cone of the Cambrian fan.
#[derive(Clone, Debug)]
pub struct CambrianCone {
    /// Group index of the sortable element it represents.
    pub sortable: usize,
    /// Indices into the fan's ray list (n of them).
    pub rays: Vec<usize>,
    /// Group indices of the constituent chambers (the projection fiber).
    pub chambers: Vec<usize>,
}

pub struct CambrianFan {
    pub data: Arc<CambrianData>,
    pub rays: Vec<Ray>,
    pub label_to_ray: HashMap<AlmostPositiveRoot, usize>,
    /// Aligned with `data.sortables`.
    pub cones: Vec<CambrianCone>,
}

/// An adjacent pair of maximal cones sharing a facet.
#[derive(Clone, Debug)]
pub struct Adjacency {
    /// Indices into `cones`.
    pub a: usize,
    pub b: usize,
    /// The n-1 shared ray indices.
    pub shared: Vec<usize>,
    /// The ray of a (resp. b) not in the other.
    pub only_a: usize,
    pub only_b: usize,
}

impl CambrianFan {
    pub fn build(data: Arc<CambrianData>) -> Result<CambrianFan> {
        let sys = &data.sys;
        let mut rays: Vec<Ray> = Vec::new();
        let mut by_dir: HashMap<Vec<Scalar>, usize> = HashMap::new();
        // rays of the singleton chambers exhaust the rays of the fan
        for &wi in &data.singletons {
            let w = &data.group.elements[wi];
            for s in 0..sys.rank() {
                let x = sys.act_on_vector(w, &sys.weights[s]);
                let key = primitive_ray(sys, &x);
                let label = lr_label(sys, w, s, &data.c)?;
                match by_dir.get(&key) {
                    Some(&i) => {
                        if rays[i].label != Some(label) {
                            return Err(Error::LabelConflict(format!(
                                "ray {} labeled {} and {}",
                                i,
                                rays[i].label.unwrap().display(sys),
                                label.display(sys)
                            )));
                        }
                        assert_eq!(rays[i].orbit, s, "orbit tag not unique per ray");
                        assert_eq!(rays[i].dir, x, "orbit points on a ray must agree");
                    }
                    None => {
                        by_dir.insert(key, rays.len());
                        rays.push(Ray {
                            dir: x,
                            orbit: s,
                            label: Some(label),
                        });
                    }
                }
            }
        }
        // canonical ray order: negative simples first, then positive roots
        // in closure order
        rays.sort_by_key(|r| match r.label.unwrap() {
            AlmostPositiveRoot::NegSimple(s) => (0, s),
            AlmostPositiveRoot::Pos(i) => (1, i),
        });
        // the labeling is a bijection onto the almost positive roots
        let mut label_to_ray: HashMap<AlmostPositiveRoot, usize> = HashMap::new();
        for (i, ray) in rays.iter().enumerate() {
            if label_to_ray.insert(ray.label.unwrap(), i).is_some() {
                return Err(Error::LabelConflict(format!(
                    "label {} used by two rays",
                    ray.label.unwrap().display(sys)
                )));
            }
        }
        let expected = sys.num_pos_roots() + sys.rank();
        if rays.len() != expected {
            return Err(Error::LabelConflict(format!(
                "{} rays, expected {expected}",
                rays.len()
            )));
        }

        let cones: Vec<CambrianCone> = data
            .sortables
            .iter()
            .map(|&wi| {
                let w = &data.group.elements[wi];
                let labels = cl_label(sys, w, &data.c)?;
                let mut cone_rays: Vec<usize> =
                    labels.iter().map(|l| label_to_ray[l]).collect();
                cone_rays.sort_unstable();
                let mut chambers = data.fibers[&wi].clone();
                chambers.sort_unstable();
                Ok(CambrianCone {
                    sortable: wi,
                    rays: cone_rays,
                    chambers,
                })
            })
            .collect::<Result<_>>()?;

        Ok(CambrianFan {
            data,
            rays,
            label_to_ray,
            cones,
        })
    }

    /// Pairs of maximal cones sharing n-1 rays.
    pub fn adjacency(&self) -> Vec<Adjacency> {
        let n = self.data.sys.rank();
        let mut out = Vec::new();
        for a in 0..self.cones.len() {
            for b in a + 1..self.cones.len() {
                let shared: Vec<usize> = self.cones[a]
                    .rays
                    .iter()
                    .copied()
                    .filter(|r| self.cones[b].rays.contains(r))
                    .collect();
                if shared.len() != n - 1 {
                    continue;
                }
                let only_a = *self.cones[a]
                    .rays
                    .iter()
                    .find(|r| !shared.contains(r))
                    .unwrap();
                let only_b = *self.cones[b]
                    .rays
                    .iter()
                    .find(|r| !shared.contains(r))
                    .unwrap();
                out.push(Adjacency {
                    a,
                    b,
                    shared,
                    only_a,
                    only_b,
                });
            }
        }
        out
    }

    /// Every constituent chamber's rays lie in the nonnegative span of the
    /// cone's extremal rays; returns the violations (expected none).
    pub fn containment_violations(&self) -> Vec<String> {
        let sys = &self.data.sys;
        let mut out = Vec::new();
        for cone in &self.cones {
            let gens: Vec<Vector> = cone
                .rays
                .iter()
                .map(|&r| self.rays[r].dir.clone())
                .collect();
            for &ch in &cone.chambers {
                let w = &self.data.group.elements[ch];
                for ray in chamber_rays(sys, w) {
                    if nonneg_combination(&gens, &ray.dir).is_none() {
                        out.push(format!(
                            "chamber {} ray (orbit {}) outside cone of {}",
                            sys.element_string(w),
                            sys.gen_names[ray.orbit],
                            sys.element_string(&self.data.group.elements[cone.sortable])
                        ));
                    }
                }
            }
        }
        out
    }

    /// True when u covers v or v covers u among the sortable elements in
    /// weak order (the lattice underlying the fan).
    pub fn is_lattice_cover(&self, a: usize, b: usize) -> bool {
        let sys = &self.data.sys;
        let group = &self.data.group;
        let (u, v) = (self.cones[a].sortable, self.cones[b].sortable);
        let (lo, hi) = if sys.weak_order_leq(&group.elements[u], &group.elements[v]) {
            (u, v)
        } else if sys.weak_order_leq(&group.elements[v], &group.elements[u]) {
            (v, u)
        } else {
            return false;
        };
        !self.data.sortables.iter().any(|&x| {
            x != lo
                && x != hi
                && sys.weak_order_leq(&group.elements[lo], &group.elements[x])
                && sys.weak_order_leq(&group.elements[x], &group.elements[hi])
        })
    }
}
