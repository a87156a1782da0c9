//! Finite Coxeter systems: root systems with reflection tables, group
//! elements as signed permutations of the positive roots, length, descents,
//! weak order, and enumeration.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::linalg::{Matrix, Vector};
use crate::scalar::{rat, NumberField, Rat, Scalar};
use crate::{Error, Result};

/// Hard cap on the positive-root closure; anything bigger is not a finite
/// system we care about (E8 has 120 positive roots).
const MAX_POS_ROOTS: usize = 20_000;

/// Inversion sets are bitmasks over positive-root indices.
pub type InvMask = u128;

// ---------------------------------------------------------------------------
// Coxeter matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub n: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<CoxeterMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty Coxeter matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Coxeter matrix is not square".into()));
        }
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        let m = CoxeterMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 1 {
                return Err(Error::Parse("Coxeter matrix diagonal must be 1".into()));
            }
            for j in 0..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::Parse("Coxeter matrix must be symmetric".into()));
                }
                if i != j && m.get(i, j) < 2 {
                    return Err(Error::Parse(
                        "off-diagonal Coxeter matrix entries must be >= 2".into(),
                    ));
                }
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    /// True when every bond is crystallographic (2, 3, 4, or 6).
    pub fn is_crystallographic(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| i == j || matches!(self.get(i, j), 2 | 3 | 4 | 6))
        })
    }
}

/// A named type or an explicit matrix, with generator names attached.
#[derive(Clone, Debug)]
pub struct TypeSpec {
    pub matrix: CoxeterMatrix,
    pub gen_names: Vec<String>,
    pub label: String,
    /// Force unit-length simple roots even when the matrix is
    /// crystallographic (used for the dihedral types I2(m)).
    pub force_unit: bool,
}

fn chain_matrix(n: usize, bonds: &[(usize, usize, u32)]) -> CoxeterMatrix {
    let mut rows = vec![vec![2u32; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, m) in bonds {
        rows[i][j] = m;
        rows[j][i] = m;
    }
    CoxeterMatrix::new(rows).unwrap()
}

fn names(prefix: &str, from: usize, count: usize) -> Vec<String> {
    (from..from + count).map(|i| format!("{prefix}{i}")).collect()
}

/// Parse a named Coxeter type: "A3", "B4", "D4", "E6", "F4", "G2", "H3",
/// "H4", "I2(7)".
pub fn parse_type(s: &str) -> Result<TypeSpec> {
    let s = s.trim();
    let err = || Error::UnknownType(s.to_string());
    if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = rest.parse().map_err(|_| err())?;
        if m < 2 {
            return Err(err());
        }
        return Ok(TypeSpec {
            matrix: chain_matrix(2, &[(0, 1, m)]),
            gen_names: names("s", 1, 2),
            label: s.to_string(),
            force_unit: true,
        });
    }
    let (letter, num) = s.split_at(1);
    let n: usize = num.parse().map_err(|_| err())?;
    let chain3 = |n: usize| -> Vec<(usize, usize, u32)> {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect()
    };
    let spec = match (letter, n) {
        ("A", n) if n >= 1 => TypeSpec {
            matrix: chain_matrix(n, &chain3(n)),
            gen_names: names("s", 1, n),
            label: s.to_string(),
            force_unit: false,
        },
        ("B", n) | ("C", n) if n >= 2 => {
            // s0 is the short-root node
            let mut bonds = chain3(n);
            bonds[0] = (0, 1, 4);
            TypeSpec {
                matrix: chain_matrix(n, &bonds),
                gen_names: names("s", 0, n),
                label: s.to_string(),
                force_unit: false,
            }
        }
        ("D", n) if n >= 4 => {
            // chain s1..s_{n-1} with s_n attached at s_{n-2}; for D4 the
            // central node is s2
            let mut bonds = chain3(n - 1);
            bonds.push((n - 3, n - 1, 3));
            TypeSpec {
                matrix: chain_matrix(n, &bonds),
                gen_names: names("s", 1, n),
                label: s.to_string(),
                force_unit: false,
            }
        }
        ("E", n) if (6..=8).contains(&n) => {
            // s1-s3-s4-...-sn chain with s2 attached at s4
            let mut bonds = vec![(0, 2, 3), (1, 3, 3)];
            for i in 2..n - 1 {
                bonds.push((i, i + 1, 3));
            }
            TypeSpec {
                matrix: chain_matrix(n, &bonds),
                gen_names: names("s", 1, n),
                label: s.to_string(),
                force_unit: false,
            }
        }
        ("F", 4) => TypeSpec {
            matrix: chain_matrix(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
            gen_names: names("s", 1, 4),
            label: s.to_string(),
            force_unit: false,
        },
        ("G", 2) => TypeSpec {
            matrix: chain_matrix(2, &[(0, 1, 6)]),
            gen_names: names("s", 1, 2),
            label: s.to_string(),
            force_unit: false,
        },
        ("H", n) if n == 3 || n == 4 => {
            let mut bonds = chain3(n);
            bonds[0] = (0, 1, 5);
            TypeSpec {
                matrix: chain_matrix(n, &bonds),
                gen_names: names("s", 1, n),
                label: s.to_string(),
                force_unit: false,
            }
        }
        _ => return Err(err()),
    };
    Ok(spec)
}

// ---------------------------------------------------------------------------
// the Coxeter system
// ---------------------------------------------------------------------------

static SYSTEM_COUNTER: AtomicU64 = AtomicU64::new(1);

pub struct CoxeterSystem {
    pub id: u64,
    pub matrix: CoxeterMatrix,
    pub field: Arc<NumberField>,
    /// Gram matrix of the simple roots.
    pub gram: Matrix,
    /// Fundamental weights v_s in the simple-root basis (columns of gram
    /// inverse), so that ip(alpha_s, weight[t]) = delta_st.
    pub weights: Vec<Vector>,
    /// Positive roots in the simple-root basis; the first n are the simple
    /// roots themselves.
    pub pos_roots: Vec<Vector>,
    /// refl[s][i] = (j, negated): s sends the positive root i to +-root j.
    refl: Vec<Vec<(u32, bool)>>,
    pub gen_names: Vec<String>,
    pub label: String,
    pub crystallographic: bool,
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoxeterSystem({}, rank {})", self.label, self.rank())
    }
}

/// Assign squared-length parameters d_s (with B(a_s,a_s) = 2 d_s) across the
/// Coxeter graph so that all Gram entries are integers. Returns None when the
/// graph has a cycle through bonds of order >= 3 (then we fall back to unit
/// roots; no finite system has such a cycle).
fn crystallographic_lengths(m: &CoxeterMatrix) -> Option<Vec<Rat>> {
    let n = m.n;
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(rat(1));
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for v in 0..n {
                if v == u || m.get(u, v) == 2 {
                    continue;
                }
                let ratio = match m.get(u, v) {
                    3 => rat(1),
                    4 => rat(2),
                    6 => rat(3),
                    _ => unreachable!("non-crystallographic bond"),
                };
                let dv = d[u].as_ref().unwrap() * &ratio;
                match &d[v] {
                    None => {
                        d[v] = Some(dv);
                        queue.push(v);
                    }
                    Some(existing) => {
                        // cross edge: only consistent if the ratio matches
                        // in one direction or the other
                        let du = d[u].as_ref().unwrap();
                        if *existing != dv && existing.clone() * &ratio != *du {
                            return None;
                        }
                    }
                }
            }
        }
    }
    // clear denominators per the whole matrix (they are already integers by
    // construction, but keep this robust)
    Some(d.into_iter().map(|x| x.unwrap()).collect())
}

fn build_gram(matrix: &CoxeterMatrix, force_unit: bool) -> Result<(Arc<NumberField>, Matrix, bool)> {
    let n = matrix.n;
    let crystallographic = matrix.is_crystallographic();
    if crystallographic && !force_unit {
        if let Some(d) = crystallographic_lengths(matrix) {
            let field = NumberField::rational();
            let mut gram = Matrix::zero(&field, n, n);
            for i in 0..n {
                *gram.at_mut(i, i) = Scalar::from_rat(&field, rat(2) * &d[i]);
                for j in i + 1..n {
                    let b = match matrix.get(i, j) {
                        2 => Rat::from_integer(0.into()),
                        // -2 sqrt(d_i d_j) cos(pi/m), rational for m in {3,4,6}
                        3 => -d[i].clone(), // d_i == d_j
                        4 => {
                            let short = if d[i] < d[j] { &d[i] } else { &d[j] };
                            rat(-2) * short
                        }
                        6 => {
                            let short = if d[i] < d[j] { &d[i] } else { &d[j] };
                            rat(-3) * short
                        }
                        _ => unreachable!(),
                    };
                    let s = Scalar::from_rat(&field, b);
                    *gram.at_mut(i, j) = s.clone();
                    *gram.at_mut(j, i) = s;
                }
            }
            return Ok((field, gram, true));
        }
    }
    // unit simple roots over Q(2cos(pi/M))
    let mut big_m = 1u32;
    for i in 0..n {
        for j in i + 1..n {
            big_m = num::integer::lcm(big_m, matrix.get(i, j));
        }
    }
    let field = if big_m <= 3 {
        NumberField::rational()
    } else {
        NumberField::two_cos_pi_over(big_m)
    };
    let mut gram = Matrix::zero(&field, n, n);
    for i in 0..n {
        *gram.at_mut(i, i) = Scalar::one(&field);
        for j in i + 1..n {
            let m = matrix.get(i, j);
            let b = match m {
                2 => Scalar::zero(&field),
                3 => Scalar::from_rat(&field, Rat::new((-1).into(), 2.into())),
                _ => -Scalar::cos_pi_over(&field, m),
            };
            *gram.at_mut(i, j) = b.clone();
            *gram.at_mut(j, i) = b;
        }
    }
    Ok((field, gram, false))
}

fn is_positive_definite(gram: &Matrix) -> bool {
    let n = gram.rows;
    for k in 1..=n {
        let mut minor = Matrix::zero(gram.data[0].field(), k, k);
        for i in 0..k {
            for j in 0..k {
                *minor.at_mut(i, j) = gram.at(i, j).clone();
            }
        }
        if minor.determinant().sign() <= 0 {
            return false;
        }
    }
    true
}

impl CoxeterSystem {
    pub fn build(spec: &TypeSpec) -> Result<Arc<CoxeterSystem>> {
        let matrix = &spec.matrix;
        let n = matrix.n;
        let (field, gram, crystallographic) = build_gram(matrix, spec.force_unit)?;
        if !is_positive_definite(&gram) {
            return Err(Error::NonFinite(format!(
                "bilinear form of {} is not positive definite",
                spec.label
            )));
        }

        // close the simple roots under all simple reflections
        let mut pos_roots: Vec<Vector> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Scalar::one(&field)
                        } else {
                            Scalar::zero(&field)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut index: HashMap<Vec<Scalar>, usize> = pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let ip = |x: &[Scalar], y: &[Scalar]| -> Scalar {
            let gy = gram.mul_vec(y);
            crate::linalg::dot_plain(x, &gy)
        };
        let mut refl: Vec<Vec<(u32, bool)>> = vec![Vec::new(); n];
        let mut next = 0usize;
        while next < pos_roots.len() {
            let beta = pos_roots[next].clone();
            for s in 0..n {
                let alpha: Vector = (0..n)
                    .map(|j| {
                        if j == s {
                            Scalar::one(&field)
                        } else {
                            Scalar::zero(&field)
                        }
                    })
                    .collect();
                let coeff = &(&Scalar::from_int(&field, 2) * &ip(&beta, &alpha))
                    / &ip(&alpha, &alpha);
                let image: Vector = (0..n)
                    .map(|j| &beta[j] - &(&coeff * &alpha[j]))
                    .collect();
                // classify: positive (all coords >= 0) or the negated simple
                let negated: Vector = image.iter().map(|c| -c).collect();
                let (key, neg) = if image.iter().all(|c| c.sign() >= 0) {
                    (image, false)
                } else {
                    debug_assert!(negated.iter().all(|c| c.sign() >= 0));
                    (negated, true)
                };
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        if pos_roots.len() >= MAX_POS_ROOTS {
                            return Err(Error::RootClosureTooLarge(MAX_POS_ROOTS));
                        }
                        pos_roots.push(key.clone());
                        index.insert(key, pos_roots.len() - 1);
                        pos_roots.len() - 1
                    }
                };
                if refl[s].len() <= next {
                    refl[s].resize(next + 1, (0, false));
                }
                refl[s][next] = (idx as u32, neg);
            }
            next += 1;
        }
        let total = pos_roots.len();
        for r in refl.iter_mut() {
            r.resize(total, (0, false));
        }
        // a simple reflection negates exactly its own simple root
        for (s, table) in refl.iter().enumerate() {
            for (i, &(j, neg)) in table.iter().enumerate() {
                debug_assert!((j as usize) < total);
                debug_assert_eq!(neg, i == s, "only alpha_s is negated by s");
            }
        }

        let weights_mat = gram.inverse();
        let weights: Vec<Vector> = (0..n)
            .map(|t| (0..n).map(|j| weights_mat.at(j, t).clone()).collect())
            .collect();

        let sys = CoxeterSystem {
            id: SYSTEM_COUNTER.fetch_add(1, AtomicOrdering::Relaxed),
            matrix: matrix.clone(),
            field,
            gram,
            weights,
            pos_roots,
            refl,
            gen_names: spec.gen_names.clone(),
            label: spec.label.clone(),
            crystallographic,
        };
        sys.validate();
        Ok(Arc::new(sys))
    }

    pub fn build_named(name: &str) -> Result<Arc<CoxeterSystem>> {
        CoxeterSystem::build(&parse_type(name)?)
    }

    fn validate(&self) {
        let n = self.rank();
        // reflection tables are involutions
        for s in 0..n {
            for i in 0..self.num_pos_roots() {
                let (j, neg1) = self.refl[s][i];
                let (k, neg2) = self.refl[s][j as usize];
                assert_eq!(k as usize, i, "reflection table not an involution");
                assert_eq!(neg1, neg2);
            }
        }
        // weight duality
        for s in 0..n {
            for t in 0..n {
                let v = self.ip(&self.pos_roots[s], &self.weights[t]);
                if s == t {
                    assert_eq!(v, Scalar::one(&self.field));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.n
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn ip(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y);
        crate::linalg::dot_plain(x, &gy)
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gen_names
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
    }

    // -- elements ----------------------------------------------------------

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            sys: self.id,
            perm: (0..self.num_pos_roots() as u32).collect(),
            neg: 0,
        }
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        let mut neg: InvMask = 0;
        let perm = self.refl[s]
            .iter()
            .enumerate()
            .map(|(i, &(j, negd))| {
                if negd {
                    neg |= 1 << i;
                }
                j
            })
            .collect();
        GroupElement { sys: self.id, perm, neg }
    }

    pub fn compose(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        assert_eq!(u.sys, v.sys);
        assert_eq!(u.sys, self.id);
        let total = self.num_pos_roots();
        let mut perm = vec![0u32; total];
        let mut neg: InvMask = 0;
        for i in 0..total {
            let j = v.perm[i] as usize;
            perm[i] = u.perm[j];
            if ((v.neg >> i) & 1) ^ ((u.neg >> j) & 1) == 1 {
                neg |= 1 << i;
            }
        }
        GroupElement { sys: self.id, perm, neg }
    }

    pub fn invert(&self, w: &GroupElement) -> GroupElement {
        let total = self.num_pos_roots();
        let mut perm = vec![0u32; total];
        let mut neg: InvMask = 0;
        for i in 0..total {
            let j = w.perm[i] as usize;
            perm[j] = i as u32;
            if (w.neg >> i) & 1 == 1 {
                neg |= 1 << j;
            }
        }
        GroupElement { sys: self.id, perm, neg }
    }

    /// Right multiplication by a simple reflection, w -> w s.
    pub fn mul_gen_right(&self, w: &GroupElement, s: usize) -> GroupElement {
        let total = self.num_pos_roots();
        let mut perm = vec![0u32; total];
        let mut neg: InvMask = 0;
        for i in 0..total {
            let (j, negd) = self.refl[s][i];
            let j = j as usize;
            perm[i] = w.perm[j];
            if (negd as u64 as InvMask) ^ ((w.neg >> j) & 1) == 1 {
                neg |= 1 << i;
            }
        }
        GroupElement { sys: self.id, perm, neg }
    }

    /// Left multiplication by a simple reflection, w -> s w.
    pub fn mul_gen_left(&self, s: usize, w: &GroupElement) -> GroupElement {
        let total = self.num_pos_roots();
        let mut perm = vec![0u32; total];
        let mut neg: InvMask = 0;
        for i in 0..total {
            let j = w.perm[i] as usize;
            let (k, negd) = self.refl[s][j];
            perm[i] = k;
            if ((w.neg >> i) & 1) ^ (negd as u64 as InvMask) == 1 {
                neg |= 1 << i;
            }
        }
        GroupElement { sys: self.id, perm, neg }
    }

    pub fn element_from_word(&self, word: &[usize]) -> GroupElement {
        let mut w = self.identity();
        for &s in word {
            assert!(s < self.rank(), "generator index out of range");
            w = self.mul_gen_right(&w, s);
        }
        w
    }

    /// Positive roots sent to negative roots by w^{-1} (so that
    /// length(w) = |inversions(w)| and u <= v in right weak order iff
    /// inversions(u) is a subset of inversions(v)).
    pub fn inversion_mask(&self, w: &GroupElement) -> InvMask {
        let mut mask: InvMask = 0;
        let mut neg = w.neg;
        while neg != 0 {
            let i = neg.trailing_zeros() as usize;
            neg &= neg - 1;
            mask |= 1 << w.perm[i];
        }
        mask
    }

    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        (w.neg >> s) & 1 == 1
    }

    pub fn is_left_descent(&self, w: &GroupElement, s: usize) -> bool {
        (self.inversion_mask(w) >> s) & 1 == 1
    }

    pub fn right_descents(&self, w: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_right_descent(w, s)).collect()
    }

    pub fn left_descents(&self, w: &GroupElement) -> Vec<usize> {
        let mask = self.inversion_mask(w);
        (0..self.rank()).filter(|&s| (mask >> s) & 1 == 1).collect()
    }

    pub fn weak_order_leq(&self, u: &GroupElement, v: &GroupElement) -> bool {
        assert_eq!(u.sys, v.sys);
        let mu = self.inversion_mask(u);
        mu & self.inversion_mask(v) == mu
    }

    /// Lexicographically smallest reduced word, by greedy left-descent
    /// extraction.
    pub fn canonical_word(&self, w: &GroupElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while cur.length() > 0 {
            let s = (0..self.rank())
                .find(|&s| self.is_left_descent(&cur, s))
                .expect("nonidentity element without left descent");
            word.push(s);
            cur = self.mul_gen_left(s, &cur);
        }
        word
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|&s| self.gen_names[s].clone()).collect::<Vec<_>>().join("")
    }

    pub fn element_string(&self, w: &GroupElement) -> String {
        self.word_string(&self.canonical_word(w))
    }

    pub fn longest_element(&self) -> GroupElement {
        let mut w = self.identity();
        loop {
            match (0..self.rank()).find(|&s| !self.is_right_descent(&w, s)) {
                Some(s) => w = self.mul_gen_right(&w, s),
                None => return w,
            }
        }
    }

    /// w = w^I w_I with w_I in the standard parabolic W_I and no right
    /// descent of w^I inside I; returns (w^I, w_I).
    pub fn parabolic_components(&self, w: &GroupElement, i_set: &[usize]) -> (GroupElement, GroupElement) {
        let mut upper = w.clone();
        let mut lower_word: Vec<usize> = Vec::new();
        'outer: loop {
            for &s in i_set {
                if self.is_right_descent(&upper, s) {
                    upper = self.mul_gen_right(&upper, s);
                    lower_word.push(s);
                    continue 'outer;
                }
            }
            break;
        }
        lower_word.reverse();
        let lower = self.element_from_word(&lower_word);
        (upper, lower)
    }

    /// The matrix of w acting on the simple-root basis (column s is the
    /// image of alpha_s).
    pub fn action_matrix(&self, w: &GroupElement) -> Matrix {
        let n = self.rank();
        let mut m = Matrix::zero(&self.field, n, n);
        for s in 0..n {
            let j = w.perm[s] as usize;
            let negd = (w.neg >> s) & 1 == 1;
            for r in 0..n {
                let c = &self.pos_roots[j][r];
                *m.at_mut(r, s) = if negd { -c } else { c.clone() };
            }
        }
        m
    }

    pub fn act_on_vector(&self, w: &GroupElement, x: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.rank(), "dimension mismatch");
        let n = self.rank();
        let mut out = vec![Scalar::zero(&self.field); n];
        for s in 0..n {
            if x[s].is_zero() {
                continue;
            }
            let j = w.perm[s] as usize;
            let negd = (w.neg >> s) & 1 == 1;
            for r in 0..n {
                let c = &self.pos_roots[j][r];
                if c.is_zero() {
                    continue;
                }
                let t = &x[s] * c;
                if negd {
                    out[r] -= &t;
                } else {
                    out[r] += &t;
                }
            }
        }
        out
    }

    /// Index of the positive root w(beta_i), with its sign.
    pub fn act_on_root(&self, w: &GroupElement, i: usize) -> (usize, bool) {
        (w.perm[i] as usize, (w.neg >> i) & 1 == 1)
    }

    pub fn enumerate(&self, max_order: u64) -> Result<EnumeratedGroup> {
        let mut elements = vec![self.identity()];
        let mut index: HashMap<GroupElement, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &ei in &frontier {
                let w = elements[ei].clone();
                for s in 0..self.rank() {
                    if self.is_right_descent(&w, s) {
                        continue;
                    }
                    let ws = self.mul_gen_right(&w, s);
                    if !index.contains_key(&ws) {
                        if elements.len() as u64 >= max_order {
                            return Err(Error::GroupTooLarge(max_order));
                        }
                        elements.push(ws.clone());
                        index.insert(ws, elements.len() - 1);
                        next.push(elements.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        Ok(EnumeratedGroup { elements, index })
    }
}

// ---------------------------------------------------------------------------
// group elements
// ---------------------------------------------------------------------------

/// A group element as a signed permutation of the positive roots:
/// w(beta_i) = +-beta_{perm[i]}, negative iff bit i of `neg` is set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    sys: u64,
    perm: Vec<u32>,
    neg: InvMask,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.neg.count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.neg == 0
    }

    pub fn system_id(&self) -> u64 {
        self.sys
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupElement(len={})", self.length())
    }
}

pub struct EnumeratedGroup {
    /// Graded by length: all elements of length k precede those of k+1.
    pub elements: Vec<GroupElement>,
    pub index: HashMap<GroupElement, usize>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, w: &GroupElement) -> usize {
        self.index[w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_frac;

    #[test]
    fn a2_root_closure() {
        let sys = CoxeterSystem::build_named("A2").unwrap();
        assert_eq!(sys.num_pos_roots(), 3);
        assert!(sys.crystallographic);
        // positive roots: a1, a2, a1+a2
        let highest: Vec<Rat> = sys.pos_roots[2]
            .iter()
            .map(|c| c.as_rat().unwrap().clone())
            .collect();
        assert_eq!(highest, vec![rat(1), rat(1)]);
    }

    #[test]
    fn a1xa1_and_i2_closures() {
        let sys = CoxeterSystem::build_named("I2(2)").unwrap();
        assert_eq!(sys.num_pos_roots(), 2);
        let sys = CoxeterSystem::build_named("I2(5)").unwrap();
        assert_eq!(sys.num_pos_roots(), 5);
        assert_eq!(sys.field.degree(), 2);
        assert_eq!(sys.field.min_poly_string(), "z^2-z-1");
        let sys = CoxeterSystem::build_named("I2(7)").unwrap();
        assert_eq!(sys.num_pos_roots(), 7);
    }

    #[test]
    fn named_type_counts() {
        for (name, pos, order) in [
            ("A3", 6usize, 24u64),
            ("B2", 4, 8),
            ("B3", 9, 48),
            ("D4", 12, 192),
            ("G2", 6, 12),
            ("H3", 15, 120),
            ("F4", 24, 1152),
        ] {
            let sys = CoxeterSystem::build_named(name).unwrap();
            assert_eq!(sys.num_pos_roots(), pos, "{name} positive roots");
            let grp = sys.enumerate(100_000).unwrap();
            assert_eq!(grp.order() as u64, order, "{name} order");
            let w0 = sys.longest_element();
            assert_eq!(w0.length(), pos, "{name} longest element");
            assert_eq!(sys.right_descents(&w0).len(), sys.rank());
        }
    }

    #[test]
    fn non_finite_rejected() {
        // affine A1~: m(s,t) = infinity is not expressible, but a rank-3
        // matrix with all bonds 3 is the affine A2 group
        let m = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        let spec = TypeSpec {
            matrix: m,
            gen_names: names("s", 1, 3),
            label: "affine".into(),
            force_unit: false,
        };
        assert!(matches!(CoxeterSystem::build(&spec), Err(Error::NonFinite(_))));
    }

    #[test]
    fn element_arithmetic() {
        let sys = CoxeterSystem::build_named("A2").unwrap();
        let e = sys.identity();
        assert_eq!(sys.element_from_word(&[]), e);
        assert_eq!(sys.element_from_word(&[0, 0]), e);
        let w0 = sys.element_from_word(&[0, 1, 0]);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, sys.longest_element());
        let s1 = sys.generator(0);
        let s2 = sys.generator(1);
        assert_eq!(sys.compose(&w0, &e), w0);
        assert_eq!(sys.invert(&s1), s1);
        let s1s2 = sys.compose(&s1, &s2);
        let s2s1 = sys.compose(&s2, &s1);
        assert_eq!(sys.compose(&s1s2, &sys.invert(&s1s2)), e);
        assert_ne!(s1s2, s2s1);
        assert_eq!(sys.invert(&s1s2), s2s1);
    }

    #[test]
    fn descents_and_weak_order() {
        let sys = CoxeterSystem::build_named("A2").unwrap();
        let e = sys.identity();
        assert!(sys.right_descents(&e).is_empty());
        let s1s2 = sys.element_from_word(&[0, 1]);
        assert_eq!(sys.right_descents(&s1s2), vec![1]);
        let s1 = sys.generator(0);
        let s2s1 = sys.element_from_word(&[1, 0]);
        assert!(sys.weak_order_leq(&s1, &s1s2));
        assert!(!sys.weak_order_leq(&s1, &s2s1));
        assert!(sys.weak_order_leq(&s1, &s1));
        // definitional cross-check on all pairs of A2, A3, B2
        for name in ["A2", "A3", "B2"] {
            let sys = CoxeterSystem::build_named(name).unwrap();
            let grp = sys.enumerate(1000).unwrap();
            for u in &grp.elements {
                for v in &grp.elements {
                    let by_inv = sys.weak_order_leq(u, v);
                    let vp = sys.compose(&sys.invert(u), v);
                    let by_def = u.length() + vp.length() == v.length();
                    assert_eq!(by_inv, by_def, "{name} weak order mismatch");
                }
            }
        }
    }

    #[test]
    fn cover_inversion_growth() {
        let sys = CoxeterSystem::build_named("B2").unwrap();
        let grp = sys.enumerate(100).unwrap();
        for w in &grp.elements {
            assert_eq!(w.length(), sys.inversion_mask(w).count_ones() as usize);
            for s in 0..sys.rank() {
                if sys.is_right_descent(w, s) {
                    continue;
                }
                let ws = sys.mul_gen_right(w, s);
                assert_eq!(ws.length(), w.length() + 1);
                let (idx, negd) = sys.act_on_root(w, s);
                assert!(!negd);
                let expect = sys.inversion_mask(w) | (1 << idx);
                assert_eq!(sys.inversion_mask(&ws), expect);
            }
        }
    }

    #[test]
    fn parabolic_decomposition() {
        let sys = CoxeterSystem::build_named("A3").unwrap();
        let grp = sys.enumerate(1000).unwrap();
        let i_set = vec![2usize];
        for w in &grp.elements {
            let (upper, lower) = sys.parabolic_components(w, &i_set);
            assert_eq!(sys.compose(&upper, &lower), *w);
            assert_eq!(upper.length() + lower.length(), w.length());
            for s in &i_set {
                assert!(!sys.is_right_descent(&upper, *s));
            }
            // lower lies in the parabolic subgroup
            let word = sys.canonical_word(&lower);
            assert!(word.iter().all(|s| i_set.contains(s)));
        }
        // w in W_I gives (e, w); I empty gives (w, e)
        let w = sys.element_from_word(&[2]);
        let (u, l) = sys.parabolic_components(&w, &i_set);
        assert!(u.is_identity());
        assert_eq!(l, w);
        let (u, l) = sys.parabolic_components(&w, &[]);
        assert_eq!(u, w);
        assert!(l.is_identity());
    }

    #[test]
    fn action_preserves_form() {
        for name in ["A3", "B2", "H3", "I2(7)"] {
            let sys = CoxeterSystem::build_named(name).unwrap();
            let w = sys.longest_element();
            let x: Vector = (0..sys.rank())
                .map(|i| Scalar::from_rat(&sys.field, rat_frac(i as i64 + 1, 3)))
                .collect();
            let y: Vector = (0..sys.rank())
                .map(|i| Scalar::from_rat(&sys.field, rat_frac(2 * i as i64 - 1, 5)))
                .collect();
            let wx = sys.act_on_vector(&w, &x);
            let wy = sys.act_on_vector(&w, &y);
            assert_eq!(sys.ip(&wx, &wy), sys.ip(&x, &y), "{name}");
            // s(alpha_s) = -alpha_s
            let s = sys.generator(0);
            let alpha: Vector = (0..sys.rank())
                .map(|i| {
                    if i == 0 {
                        Scalar::one(&sys.field)
                    } else {
                        Scalar::zero(&sys.field)
                    }
                })
                .collect();
            let img = sys.act_on_vector(&s, &alpha);
            assert_eq!(img[0], -Scalar::one(&sys.field));
        }
    }

    #[test]
    fn canonical_words_round_trip() {
        let sys = CoxeterSystem::build_named("B3").unwrap();
        let grp = sys.enumerate(1000).unwrap();
        for w in &grp.elements {
            let word = sys.canonical_word(w);
            assert_eq!(word.len(), w.length());
            assert_eq!(&sys.element_from_word(&word), w);
        }
    }

    #[test]
    fn type_parser() {
        assert!(parse_type("A0").is_err());
        assert!(parse_type("Z3").is_err());
        assert!(parse_type("I2(1)").is_err());
        let b = parse_type("B3").unwrap();
        assert_eq!(b.gen_names, vec!["s0", "s1", "s2"]);
        assert_eq!(b.matrix.get(0, 1), 4);
        let d = parse_type("D4").unwrap();
        // s2 is the central node
        assert_eq!(d.matrix.get(1, 0), 3);
        assert_eq!(d.matrix.get(1, 2), 3);
        assert_eq!(d.matrix.get(1, 3), 3);
        assert_eq!(d.matrix.get(0, 2), 2);
        let i2 = parse_type("I2(4)").unwrap();
        assert!(i2.force_unit);
    }

    #[test]
    fn short_root_convention_in_b() {
        let sys = CoxeterSystem::build_named("B3").unwrap();
        // s0 is short: squared length 2 vs 4
        assert_eq!(sys.gram.at(0, 0).as_rat().unwrap(), &rat(2));
        assert_eq!(sys.gram.at(1, 1).as_rat().unwrap(), &rat(4));
        assert_eq!(sys.gram.at(0, 1).as_rat().unwrap(), &rat(-2));
    }
}
