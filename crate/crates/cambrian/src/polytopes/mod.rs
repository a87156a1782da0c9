//! Exact H- and V-representations of the permutahedron and the generalized
//! associahedron, the fan-pointing verifier, and supporting observations
//! (barycentres, integer coordinates, low-rank models).

pub mod classical;
pub mod dihedral;

use std::collections::HashMap;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, EnumeratedGroup};
use crate::fans::{coxeter_fan_rays, AlmostPositiveRoot, CambrianFan};
use crate::linalg::{solve, vec_scale, vec_sub, Matrix, Vector};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// An interior point of the fundamental chamber, a = sum of coeffs[s] v_s.
#[derive(Clone, Debug)]
pub struct BasePoint {
    /// Weight-basis coefficients, all strictly positive.
    pub coeffs: Vec<Scalar>,
    /// The point in the simple-root basis.
    pub point: Vector,
}

impl BasePoint {
    pub fn from_coeffs(sys: &CoxeterSystem, coeffs: Vec<Scalar>) -> Result<BasePoint> {
        if coeffs.len() != sys.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for rank {}",
                coeffs.len(),
                sys.rank()
            )));
        }
        if coeffs.iter().any(|c| c.sign() <= 0) {
            return Err(Error::NotInterior);
        }
        let mut point = vec![Scalar::zero(&sys.field); sys.rank()];
        for (s, c) in coeffs.iter().enumerate() {
            for r in 0..sys.rank() {
                point[r] += &(c * &sys.weights[s][r]);
            }
        }
        Ok(BasePoint { coeffs, point })
    }

    pub fn ones(sys: &CoxeterSystem) -> BasePoint {
        BasePoint::from_coeffs(sys, vec![Scalar::one(&sys.field); sys.rank()]).unwrap()
    }

    pub fn from_point(sys: &CoxeterSystem, point: Vector) -> Result<BasePoint> {
        let coeffs: Vec<Scalar> = (0..sys.rank())
            .map(|s| {
                let mut alpha = vec![Scalar::zero(&sys.field); sys.rank()];
                alpha[s] = Scalar::one(&sys.field);
                sys.ip(&point, &alpha)
            })
            .collect();
        if coeffs.iter().any(|c| c.sign() <= 0) {
            return Err(Error::NotInterior);
        }
        Ok(BasePoint { coeffs, point })
    }

    /// The sum of all positive roots; lies in the root lattice and in the
    /// interior of the fundamental chamber.
    pub fn sum_of_positive_roots(sys: &CoxeterSystem) -> Result<BasePoint> {
        let mut point = vec![Scalar::zero(&sys.field); sys.rank()];
        for root in &sys.pos_roots {
            for r in 0..sys.rank() {
                point[r] += &root[r];
            }
        }
        BasePoint::from_point(sys, point)
    }
}

#[derive(Clone, Debug)]
pub struct HalfSpace {
    /// Primitive outward normal (a ray direction of the normal fan).
    pub normal: Vector,
    pub offset: Scalar,
    /// Orbit tag of the ray.
    pub orbit: usize,
    pub admissible: bool,
    pub label: Option<AlmostPositiveRoot>,
}

#[derive(Clone, Debug)]
pub struct PolyVertex {
    pub point: Vector,
    /// Group index for permutahedra; cone index for associahedra.
    pub tag: usize,
}

pub struct Polytope {
    pub sys: Arc<CoxeterSystem>,
    pub vertices: Vec<PolyVertex>,
    pub halfspaces: Vec<HalfSpace>,
}

impl Polytope {
    /// incidence[v][h]: vertex v is tight on half space h.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.vertices
            .iter()
            .map(|v| {
                self.halfspaces
                    .iter()
                    .map(|h| self.sys.ip(&v.point, &h.normal) == h.offset)
                    .collect()
            })
            .collect()
    }
}

/// The permutahedron: orbit of the base point, one half space per ray of
/// the Coxeter fan, offsets from the support function.
pub fn permutahedron(
    sys: &Arc<CoxeterSystem>,
    group: &EnumeratedGroup,
    a: &BasePoint,
) -> Polytope {
    let vertices: Vec<PolyVertex> = group
        .elements
        .iter()
        .enumerate()
        .map(|(i, w)| PolyVertex {
            point: sys.act_on_vector(w, &a.point),
            tag: i,
        })
        .collect();
    let halfspaces: Vec<HalfSpace> = coxeter_fan_rays(sys, group)
        .into_iter()
        .map(|ray| {
            let offset = vertices
                .iter()
                .map(|v| sys.ip(&v.point, &ray.dir))
                .max()
                .unwrap();
            HalfSpace {
                normal: ray.dir,
                offset,
                orbit: ray.orbit,
                admissible: false,
                label: None,
            }
        })
        .collect();
    Polytope {
        sys: sys.clone(),
        vertices,
        halfspaces,
    }
}

/// Indices of the permutahedron half spaces whose boundary contains the
/// vertex of at least one singleton element.
pub fn admissible_halfspaces(perm: &Polytope, fan: &CambrianFan) -> Vec<usize> {
    let sys = &perm.sys;
    let singleton_points: Vec<&Vector> = fan
        .data
        .singletons
        .iter()
        .map(|&wi| &perm.vertices[wi].point)
        .collect();
    (0..perm.halfspaces.len())
        .filter(|&h| {
            let hs = &perm.halfspaces[h];
            singleton_points
                .iter()
                .any(|p| sys.ip(p, &hs.normal) == hs.offset)
        })
        .collect()
}

/// Offsets of the fan's rays for a given base point (the support values of
/// the permutahedron, realized at the singleton vertices).
pub fn fan_offsets(fan: &CambrianFan, a: &BasePoint) -> Vec<Scalar> {
    let sys = &fan.data.sys;
    let points: Vec<Vector> = fan
        .data
        .singletons
        .iter()
        .map(|&wi| sys.act_on_vector(&fan.data.group.elements[wi], &a.point))
        .collect();
    fan.rays
        .iter()
        .map(|ray| points.iter().map(|p| sys.ip(p, &ray.dir)).max().unwrap())
        .collect()
}

/// The vertex of a maximal cone: the intersection of its n bounding
/// hyperplanes.
pub fn cone_vertex(fan: &CambrianFan, cone: usize, offsets: &[Scalar]) -> Result<Vector> {
    let sys = &fan.data.sys;
    let n = sys.rank();
    let rays = &fan.cones[cone].rays;
    let mut mat = Matrix::zero(&sys.field, n, n);
    let mut rhs = Vec::with_capacity(n);
    for (row, &r) in rays.iter().enumerate() {
        let gn = sys.gram.mul_vec(&fan.rays[r].dir);
        for col in 0..n {
            *mat.at_mut(row, col) = gn[col].clone();
        }
        rhs.push(offsets[r].clone());
    }
    solve(&mat, &rhs).ok_or(Error::SingularCone)
}

/// The generalized associahedron: admissible half spaces only, one vertex
/// per maximal cone of the Cambrian fan.
pub fn associahedron(fan: &CambrianFan, a: &BasePoint) -> Result<Polytope> {
    let offsets = fan_offsets(fan, a);
    let vertices: Vec<PolyVertex> = (0..fan.cones.len())
        .map(|ci| {
            Ok(PolyVertex {
                point: cone_vertex(fan, ci, &offsets)?,
                tag: ci,
            })
        })
        .collect::<Result<_>>()?;
    let halfspaces: Vec<HalfSpace> = fan
        .rays
        .iter()
        .zip(&offsets)
        .map(|(ray, off)| HalfSpace {
            normal: ray.dir.clone(),
            offset: off.clone(),
            orbit: ray.orbit,
            admissible: true,
            label: ray.label,
        })
        .collect();
    Ok(Polytope {
        sys: fan.data.sys.clone(),
        vertices,
        halfspaces,
    })
}

#[derive(Debug, Default)]
pub struct PointingReport {
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

impl PointingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify, for every adjacent pair of maximal cones, that the two non-shared
/// rays combine over the shared rays with nonnegative coefficients, that the
/// strict offset inequality holds, and that the two cone vertices differ by
/// a positive multiple of a negative root (oriented by the lattice cover).
pub fn pointing_check(fan: &CambrianFan, offsets: &[Scalar]) -> PointingReport {
    let sys = &fan.data.sys;
    let group = &fan.data.group;
    let n = sys.rank();
    let mut report = PointingReport::default();
    let vertices: Vec<Option<Vector>> = (0..fan.cones.len())
        .map(|ci| cone_vertex(fan, ci, offsets).ok())
        .collect();
    for adj in fan.adjacency() {
        report.pairs_checked += 1;
        let name = |c: usize| sys.element_string(&group.elements[fan.cones[c].sortable]);
        let pair = format!("C({}) | C({})", name(adj.a), name(adj.b));
        // u1 + u1' as a combination of the shared rays
        let target = crate::linalg::vec_add(&fan.rays[adj.only_a].dir, &fan.rays[adj.only_b].dir);
        let mut mat = Matrix::zero(&sys.field, n, n - 1);
        for (col, &r) in adj.shared.iter().enumerate() {
            for row in 0..n {
                *mat.at_mut(row, col) = fan.rays[r].dir[row].clone();
            }
        }
        let Some(b) = solve(&mat, &target) else {
            report
                .violations
                .push(format!("{pair}: rays do not combine over the shared facet"));
            continue;
        };
        if b.iter().any(|c| c.sign() < 0) {
            report
                .violations
                .push(format!("{pair}: negative combination coefficient"));
            continue;
        }
        let mut rhs = Scalar::zero(&sys.field);
        for (i, &r) in adj.shared.iter().enumerate() {
            rhs += &(&b[i] * &offsets[r]);
        }
        let lhs = &offsets[adj.only_a] + &offsets[adj.only_b];
        if (&lhs - &rhs).sign() <= 0 {
            report
                .violations
                .push(format!("{pair}: offset inequality fails"));
            continue;
        }
        // the difference of the two cone vertices points along a negative
        // root, from the lower to the upper element of the cover
        let (Some(xa), Some(xb)) = (&vertices[adj.a], &vertices[adj.b]) else {
            report.violations.push(format!("{pair}: singular cone"));
            continue;
        };
        let (wa, wb) = (fan.cones[adj.a].sortable, fan.cones[adj.b].sortable);
        let (lo_x, hi_x) = if sys.weak_order_leq(&group.elements[wa], &group.elements[wb]) {
            (xa, xb)
        } else {
            (xb, xa)
        };
        let d = vec_sub(hi_x, lo_x);
        let is_neg_root_multiple = sys.pos_roots.iter().any(|beta| {
            // d = -mu * beta with mu > 0
            let Some(k) = (0..n).find(|&k| !beta[k].is_zero()) else {
                return false;
            };
            let mu = -(&d[k] / &beta[k]);
            mu.sign() > 0 && (0..n).all(|r| d[r] == -(&mu * &beta[r]))
        });
        if !is_neg_root_multiple {
            report
                .violations
                .push(format!("{pair}: vertex difference is not along a negative root"));
        }
    }
    report
}

/// Exact intersection of the two vertex sets; returns (perm tag, ass tag)
/// pairs.
pub fn common_vertices(perm: &Polytope, ass: &Polytope) -> Vec<(usize, usize)> {
    let by_point: HashMap<Vec<Scalar>, usize> = perm
        .vertices
        .iter()
        .map(|v| (v.point.clone(), v.tag))
        .collect();
    ass.vertices
        .iter()
        .filter_map(|v| by_point.get(&v.point).map(|&p| (p, v.tag)))
        .collect()
}

pub fn barycentre(poly: &Polytope) -> Vector {
    let sys = &poly.sys;
    let n = sys.rank();
    let mut acc = vec![Scalar::zero(&sys.field); n];
    for v in &poly.vertices {
        for r in 0..n {
            acc[r] += &v.point[r];
        }
    }
    let count = Scalar::from_int(&sys.field, poly.vertices.len() as i64);
    acc.into_iter().map(|c| &c / &count).collect()
}

#[derive(Debug, Default)]
pub struct ConsistencyReport {
    pub violations: Vec<String>,
}

impl ConsistencyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validate the paired representations: every vertex inside every half
/// space, tight on exactly n independent half spaces, every half space
/// facet-defining, edge graph connected.
pub fn hv_consistency(poly: &Polytope) -> ConsistencyReport {
    let sys = &poly.sys;
    let n = sys.rank();
    let mut report = ConsistencyReport::default();
    let inc = poly.incidence();
    for (vi, v) in poly.vertices.iter().enumerate() {
        let mut tight: Vec<usize> = Vec::new();
        for (hi, h) in poly.halfspaces.iter().enumerate() {
            let val = sys.ip(&v.point, &h.normal);
            match (&val - &h.offset).sign() {
                s if s > 0 => report
                    .violations
                    .push(format!("vertex {vi} violates half space {hi}")),
                0 => tight.push(hi),
                _ => {}
            }
        }
        if tight.len() != n {
            report.violations.push(format!(
                "vertex {vi} tight on {} half spaces, expected {n}",
                tight.len()
            ));
            continue;
        }
        let mat = Matrix::from_rows(
            tight
                .iter()
                .map(|&hi| poly.halfspaces[hi].normal.clone())
                .collect(),
        );
        if mat.determinant().is_zero() {
            report
                .violations
                .push(format!("vertex {vi}: tight normals are dependent"));
        }
    }
    for hi in 0..poly.halfspaces.len() {
        let count = inc.iter().filter(|row| row[hi]).count();
        if count < n {
            report.violations.push(format!(
                "half space {hi} tight at only {count} vertices (not a facet)"
            ));
        }
    }
    // edge graph: vertices sharing n-1 tight half spaces
    let m = poly.vertices.len();
    let mut reached = vec![false; m];
    let mut stack = vec![0usize];
    reached[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..m {
            if reached[u] {
                continue;
            }
            let shared = (0..poly.halfspaces.len())
                .filter(|&h| inc[v][h] && inc[u][h])
                .count();
            if shared == n - 1 {
                reached[u] = true;
                stack.push(u);
            }
        }
    }
    if !reached.iter().all(|&r| r) {
        report.violations.push("edge graph is not connected".into());
    }
    report
}

/// All vertices integral in the simple-root basis; requires a
/// crystallographic system and a base point in the root lattice.
pub fn integer_coordinate_check(poly: &Polytope, a: &BasePoint) -> Result<Vec<String>> {
    let sys = &poly.sys;
    if !sys.crystallographic {
        return Err(Error::NotCrystallographic);
    }
    if !a.point.iter().all(|c| c.is_integer()) {
        return Err(Error::Parse(
            "base point is not in the root lattice".into(),
        ));
    }
    let mut violations = Vec::new();
    for (vi, v) in poly.vertices.iter().enumerate() {
        if !v.point.iter().all(|c| c.is_integer()) {
            violations.push(format!(
                "vertex {vi} has non-integral coordinates: {:?}",
                v.point
            ));
        }
    }
    Ok(violations)
}

/// Vertices of a 2-dimensional polytope given by half spaces
/// (normal, offset) with the plain dot product: intersect all pairs of
/// boundary lines and keep the feasible points.
pub fn polygon_vertices(halfspaces: &[(Vector, Scalar)]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    let field = halfspaces[0].1.field().clone();
    for i in 0..halfspaces.len() {
        for j in i + 1..halfspaces.len() {
            let (n1, o1) = &halfspaces[i];
            let (n2, o2) = &halfspaces[j];
            let det = &(&n1[0] * &n2[1]) - &(&n1[1] * &n2[0]);
            if det.is_zero() {
                continue;
            }
            let x = &(&(o1 * &n2[1]) - &(o2 * &n1[1])) / &det;
            let y = &(&(&n1[0] * o2) - &(&n2[0] * o1)) / &det;
            let p = vec![x, y];
            let feasible = halfspaces
                .iter()
                .all(|(nn, oo)| (&crate::linalg::dot_plain(nn, &p) - oo).sign() <= 0);
            if feasible && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    let _ = field;
    out
}

/// Scale every coordinate of a vector by a scalar (re-exported convenience).
pub fn scale_point(c: &Scalar, x: &[Scalar]) -> Vector {
    vec_scale(c, x)
}
