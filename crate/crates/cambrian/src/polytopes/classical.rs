//! The symmetric-group model in ambient coordinates and the embedding of
//! the rank-2 hyperoctahedral group into A3 by folding.

use std::collections::HashSet;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::linalg::Vector;
use crate::polytopes::{
    associahedron, permutahedron, polygon_vertices, BasePoint, Polytope,
};
use crate::scalar::{rat, rat_frac, NumberField, Rat, Scalar};
use crate::sortable::{CambrianData, CoxeterChoice};
use crate::fans::CambrianFan;
use crate::Result;

/// Map a point of the type-A root space (simple-root basis, rank n) into
/// R^{n+1} via alpha_i = e_{i+1} - e_i.
pub fn ambient_a(x: &Vector) -> Vec<Rat> {
    let n = x.len();
    let get = |i: isize| -> Rat {
        if i < 0 || i as usize >= n {
            rat(0)
        } else {
            x[i as usize].as_rat().expect("type A coordinates are rational").clone()
        }
    };
    (0..=n as isize).map(|k| get(k - 1) - get(k)).collect()
}

/// The permutation realized by a type-A group element: generator s_i acts
/// on R^{n+1} as the transposition of coordinates i and i+1, and the word
/// composes as linear maps.
pub fn permutation_rep(sys: &CoxeterSystem, w: &GroupElement) -> Vec<usize> {
    let n = sys.rank();
    let word = sys.canonical_word(w);
    let mut sigma: Vec<usize> = (0..=n).collect();
    for &s in word.iter().rev() {
        // sigma := tau_s o sigma
        for v in sigma.iter_mut() {
            if *v == s {
                *v = s + 1;
            } else if *v == s + 1 {
                *v = s;
            }
        }
    }
    sigma
}

/// The translated ambient vertex of the type-A permutahedron: with the
/// all-ones base point, M(w) + v_G has coordinates sigma^{-1}(1..n+1).
pub fn translated_vertex_a(sys: &CoxeterSystem, w: &GroupElement, a: &BasePoint) -> Vec<Rat> {
    let n = sys.rank();
    let point = sys.act_on_vector(w, &a.point);
    let mut y = ambient_a(&point);
    let vg = rat_frac(n as i64 + 2, 2);
    for c in y.iter_mut() {
        *c += &vg;
    }
    y
}

/// Verify the ambient formula vertex by vertex: the translated vertex of w
/// is e_j -> sigma^{-1}(j).
pub fn type_a_vertex_formula_holds(
    sys: &CoxeterSystem,
    group: &crate::coxeter::EnumeratedGroup,
) -> bool {
    let a = BasePoint::ones(sys);
    group.elements.iter().all(|w| {
        let y = translated_vertex_a(sys, w, &a);
        let sigma = permutation_rep(sys, w);
        sigma
            .iter()
            .enumerate()
            .all(|(k, &img)| y[img] == rat(k as i64 + 1))
    })
}

/// Images of the B2 simple roots inside R^4 (folding of A3):
/// the short root goes to e3 - e2 and the long root to
/// (e2 - e1) + (e4 - e3).
fn b2_root_images() -> [Vec<Rat>; 2] {
    [
        vec![rat(0), rat(-1), rat(1), rat(0)],
        vec![rat(-1), rat(1), rat(-1), rat(1)],
    ]
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Embed a B2 point (simple-root basis) into R^4.
pub fn embed_b2(x: &Vector) -> Vec<Rat> {
    let psi = b2_root_images();
    let mut y = vec![rat(0); 4];
    for (s, image) in psi.iter().enumerate() {
        let c = x[s].as_rat().expect("B2 coordinates are rational");
        for k in 0..4 {
            y[k] += c * &image[k];
        }
    }
    y
}

/// The symmetric subspace: x1 + x4 = 0 and x2 + x3 = 0.
pub fn in_symmetric_subspace(y: &[Rat]) -> bool {
    (&y[0] + &y[3]).eq(&rat(0)) && (&y[1] + &y[2]).eq(&rat(0))
}

pub struct B2EmbeddingReport {
    pub c_b2: Vec<usize>,
    pub c_a3: Vec<usize>,
    pub b2_base_coeffs: Vec<Rat>,
    pub perm_vertices_match: bool,
    pub perm_polytope_match: bool,
    pub ass_vertices_match: bool,
    pub ass_polytope_match: bool,
}

impl B2EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.perm_vertices_match
            && self.perm_polytope_match
            && self.ass_vertices_match
            && self.ass_polytope_match
    }
}

/// Vertices of the restriction of an A3 polytope to the symmetric
/// subspace, computed from its half spaces in an orthogonal basis of the
/// plane, then lifted back to R^4.
fn restricted_vertices(poly: &Polytope, admissible_only: bool) -> Vec<Vec<Rat>> {
    let field = NumberField::rational();
    // plane basis inside the symmetric subspace
    let u1: Vec<Rat> = vec![rat(-1), rat(0), rat(0), rat(1)];
    let u2: Vec<Rat> = vec![rat(0), rat(-1), rat(1), rat(0)];
    let mut halfspaces = Vec::new();
    for h in &poly.halfspaces {
        if admissible_only && !h.admissible {
            continue;
        }
        let na = ambient_a(&h.normal);
        let n2 = vec![
            Scalar::from_rat(&field, dot(&na, &u1)),
            Scalar::from_rat(&field, dot(&na, &u2)),
        ];
        halfspaces.push((n2, h.offset.clone()));
    }
    polygon_vertices(&halfspaces)
        .into_iter()
        .map(|pq| {
            let p = pq[0].as_rat().unwrap();
            let q = pq[1].as_rat().unwrap();
            (0..4).map(|k| p * &u1[k] + q * &u2[k]).collect()
        })
        .collect()
}

fn as_set(points: Vec<Vec<Rat>>) -> HashSet<Vec<Rat>> {
    points.into_iter().collect()
}

/// Compare the B2 permutahedron and associahedron with the symmetric
/// restriction of the A3 objects. `c_b2` is the B2 Coxeter word over
/// generators (s0 short, s1 long); the matching A3 Coxeter element replaces
/// s0 by the middle generator and s1 by the commuting outer pair.
pub fn b2_embedding_check(c_b2: [usize; 2]) -> Result<B2EmbeddingReport> {
    let sys_b = CoxeterSystem::build_named("B2")?;
    let sys_a = CoxeterSystem::build_named("A3")?;
    let group_b = Arc::new(sys_b.enumerate(1000)?);
    let group_a = Arc::new(sys_a.enumerate(1000)?);

    // the embedding is isometric
    let psi = b2_root_images();
    for s in 0..2 {
        for t in 0..2 {
            assert_eq!(
                &dot(&psi[s], &psi[t]),
                sys_b.gram.at(s, t).as_rat().unwrap(),
                "folding does not preserve the form"
            );
        }
    }

    // A3 base point: all weight coefficients 1; its ambient image is
    // symmetric, so it restricts to a valid B2 base point
    let a_a = BasePoint::ones(&sys_a);
    let aa_ambient = ambient_a(&a_a.point);
    assert!(in_symmetric_subspace(&aa_ambient));
    let b_coeffs: Vec<Rat> = (0..2).map(|s| dot(&aa_ambient, &psi[s])).collect();
    let a_b = BasePoint::from_coeffs(
        &sys_b,
        b_coeffs
            .iter()
            .map(|r| Scalar::from_rat(&sys_b.field, r.clone()))
            .collect(),
    )?;

    // s0 -> middle generator of A3, s1 -> the outer commuting pair
    let expand = |s: usize| -> Vec<usize> {
        if s == 0 {
            vec![1]
        } else {
            vec![0, 2]
        }
    };
    let c_a3: Vec<usize> = c_b2.iter().flat_map(|&s| expand(s)).collect();

    let mut perm_b = permutahedron(&sys_b, &group_b, &a_b);
    let perm_a = permutahedron(&sys_a, &group_a, &a_a);
    for h in perm_a.halfspaces.iter() {
        let _ = h;
    }
    let embedded_perm: HashSet<Vec<Rat>> = perm_b
        .vertices
        .iter()
        .map(|v| embed_b2(&v.point))
        .collect();
    let sym_a_vertices: HashSet<Vec<Rat>> = perm_a
        .vertices
        .iter()
        .map(|v| ambient_a(&v.point))
        .filter(|y| in_symmetric_subspace(y))
        .collect();
    let perm_vertices_match = embedded_perm == sym_a_vertices;
    let perm_polytope_match = embedded_perm == as_set(restricted_vertices(&perm_a, false));

    let c_b = CoxeterChoice::new(&sys_b, c_b2.to_vec())?;
    let data_b = Arc::new(CambrianData::new(sys_b.clone(), group_b.clone(), c_b));
    let fan_b = CambrianFan::build(data_b)?;
    let ass_b = associahedron(&fan_b, &a_b)?;
    let c_a = CoxeterChoice::new(&sys_a, c_a3.clone())?;
    let data_a = Arc::new(CambrianData::new(sys_a.clone(), group_a.clone(), c_a));
    let fan_a = CambrianFan::build(data_a)?;
    let ass_a = associahedron(&fan_a, &a_a)?;

    let embedded_ass: HashSet<Vec<Rat>> = ass_b
        .vertices
        .iter()
        .map(|v| embed_b2(&v.point))
        .collect();
    let sym_ass_vertices: HashSet<Vec<Rat>> = ass_a
        .vertices
        .iter()
        .map(|v| ambient_a(&v.point))
        .filter(|y| in_symmetric_subspace(y))
        .collect();
    let ass_vertices_match = embedded_ass == sym_ass_vertices;
    let ass_polytope_match = embedded_ass == as_set(restricted_vertices(&ass_a, true));

    // mark admissibility on the B2 permutahedron for completeness
    for h in perm_b.halfspaces.iter_mut() {
        h.admissible = fan_b.rays.iter().any(|r| r.dir == h.normal);
    }

    Ok(B2EmbeddingReport {
        c_b2: c_b2.to_vec(),
        c_a3,
        b2_base_coeffs: b_coeffs,
        perm_vertices_match,
        perm_polytope_match,
        ass_vertices_match,
        ass_polytope_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_vertex_is_1_to_n() {
        let sys = CoxeterSystem::build_named("A2").unwrap();
        let a = BasePoint::ones(&sys);
        let e = sys.identity();
        assert_eq!(translated_vertex_a(&sys, &e, &a), vec![rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn s4_vertices_are_permutations() {
        let sys = CoxeterSystem::build_named("A3").unwrap();
        let group = sys.enumerate(1000).unwrap();
        assert!(type_a_vertex_formula_holds(&sys, &group));
        let a = BasePoint::ones(&sys);
        let points: HashSet<Vec<Rat>> = group
            .elements
            .iter()
            .map(|w| translated_vertex_a(&sys, w, &a))
            .collect();
        assert_eq!(points.len(), 24);
        for p in &points {
            let mut sorted = p.clone();
            sorted.sort();
            assert_eq!(sorted, vec![rat(1), rat(2), rat(3), rat(4)]);
        }
    }

    #[test]
    fn b2_embedding_both_coxeter_elements() {
        for c in [[0usize, 1], [1, 0]] {
            let report = b2_embedding_check(c).unwrap();
            assert_eq!(report.b2_base_coeffs, vec![rat(1), rat(2)]);
            assert!(report.perm_vertices_match, "{c:?} perm vertices");
            assert!(report.perm_polytope_match, "{c:?} perm polytope");
            assert!(report.ass_vertices_match, "{c:?} ass vertices");
            assert!(report.ass_polytope_match, "{c:?} ass polytope");
        }
    }
}
