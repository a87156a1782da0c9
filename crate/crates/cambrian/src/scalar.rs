//! Exact arithmetic in the real number field `Q(2cos(pi/m))`.
//!
//! Every scalar quantity in this crate (root coordinates, half-space
//! offsets, vertex coordinates) lives in a fixed real algebraic number
//! field.  For crystallographic systems the field is plain `Q`; for the
//! others it is `Q(z)` with `z = 2cos(pi/m)`, represented as polynomial
//! residues modulo the minimal polynomial of `z`.  All operations are
//! exact, equality is decidable, and the sign of a nonzero element is
//! determined through a rational interval enclosure of `z`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// integer polynomial helpers (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is not exact.
fn int_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(rem.len() > dd);
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + dd].clone();
        let q = &lead / &den[dd];
        assert_eq!(&q * &den[dd], lead, "non-exact polynomial division");
        quot[k] = q.clone();
        for (i, di) in den.iter().enumerate() {
            let t = &q * di;
            rem[k + i] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// The n-th cyclotomic polynomial over the integers.
fn cyclotomic(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            den = int_poly_mul(&den, &cyclotomic(d));
        }
    }
    int_poly_div(&num, &den)
}

/// `C_k` with `C_k(2cos t) = 2cos(kt)`: C_0 = 2, C_1 = x, C_k = x C_{k-1} - C_{k-2}.
fn dickson(k: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

// ---------------------------------------------------------------------------
// rational polynomial helpers
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of `p` modulo the monic polynomial `m`.
fn poly_rem(p: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let d = m.len() - 1;
    let mut r: Vec<Rat> = p.to_vec();
    while r.len() > d {
        let k = r.len() - 1 - d;
        let lead = r.pop().unwrap();
        for i in 0..d {
            let t = &lead * &m[i];
            r[k + i] -= t;
        }
        poly_trim(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            return vec![Rat::zero()];
        }
    }
    r
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Inverse of `a` modulo the monic irreducible polynomial `m` (extended Euclid).
fn poly_inverse(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    // Invariants: r0 = s0*a mod m, r1 = s1*a mod m.
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    poly_trim(&mut r1);
    let mut s0: Vec<Rat> = vec![Rat::zero()];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !poly_is_zero(&r1) {
        // divide r0 by r1
        let mut q = vec![Rat::zero(); r0.len().saturating_sub(r1.len()) + 1];
        let mut rem = r0.clone();
        let dlead = r1.last().unwrap().clone();
        while rem.len() >= r1.len() && !poly_is_zero(&rem) {
            let k = rem.len() - r1.len();
            let c = rem.last().unwrap() / &dlead;
            q[k] = c.clone();
            for (i, di) in r1.iter().enumerate() {
                let t = &c * di;
                rem[k + i] -= t;
            }
            poly_trim(&mut rem);
            if poly_is_zero(&rem) {
                rem = vec![Rat::zero()];
                break;
            }
        }
        let qs1 = poly_mul(&q, &s1);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs1.len()), Rat::zero());
        for (i, c) in qs1.iter().enumerate() {
            s2[i] -= c;
        }
        poly_trim(&mut s2);
        r0 = r1;
        r1 = rem;
        poly_trim(&mut r1);
        if poly_is_zero(&r1) {
            r1 = vec![Rat::zero()];
        }
        s0 = s1;
        s1 = s2;
        if r1.len() == 1 && r1[0].is_zero() {
            break;
        }
    }
    // r0 is a nonzero constant gcd; inverse = s0 / r0
    assert_eq!(r0.len(), 1, "element not invertible modulo the minimal polynomial");
    let g = r0[0].clone();
    assert!(!g.is_zero());
    let mut inv: Vec<Rat> = s0.iter().map(|c| c / &g).collect();
    inv = poly_rem(&inv, m);
    inv
}

// ---------------------------------------------------------------------------
// rational interval arithmetic (for sign determination)
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    fn point(r: Rat) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }
}

// ---------------------------------------------------------------------------
// the number field
// ---------------------------------------------------------------------------

/// The real field `Q(z)` with `z = 2cos(pi/m)`, or plain `Q` when the
/// minimal polynomial has degree one.
pub struct NumberField {
    /// `z = 2cos(pi/m)`; `m = 0` marks the plain rational field.
    m: u32,
    /// Monic minimal polynomial of `z`, little-endian.
    min_poly: Vec<Rat>,
    /// Rational enclosure of `z`, refined on demand.
    enclosure: Mutex<(Rat, Rat)>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(m={}, degree={})", self.m, self.degree())
    }
}

impl NumberField {
    /// The plain rational field.
    pub fn rational() -> Arc<NumberField> {
        Arc::new(NumberField {
            m: 0,
            min_poly: vec![Rat::zero(), Rat::one()],
            enclosure: Mutex::new((Rat::zero(), Rat::zero())),
        })
    }

    /// The field `Q(2cos(pi/m))`.
    pub fn two_cos_pi_over(m: u32) -> Arc<NumberField> {
        assert!(m >= 2, "need m >= 2");
        let phi = cyclotomic(2 * m);
        let d = (phi.len() - 1) / 2;
        // Phi_{2m} is palindromic of even degree 2d; write it in the basis
        // y^k + y^{-k} = C_k(y + 1/y) to read off the minimal polynomial.
        let mut psi = vec![BigInt::zero()];
        for k in 0..=d {
            let a = phi[d + k].clone();
            if a.is_zero() {
                continue;
            }
            let ck = if k == 0 {
                vec![BigInt::one()]
            } else {
                dickson(k as u32)
            };
            if psi.len() < ck.len() {
                psi.resize(ck.len(), BigInt::zero());
            }
            for (i, c) in ck.iter().enumerate() {
                psi[i] += &a * c;
            }
        }
        let min_poly: Vec<Rat> = psi.iter().map(|c| Rat::from_integer(c.clone())).collect();
        assert!(min_poly.last().unwrap().is_one(), "minimal polynomial not monic");

        let z0 = 2.0 * (std::f64::consts::PI / m as f64).cos();
        let enclosure = if min_poly.len() == 2 {
            let r = -min_poly[0].clone();
            (r.clone(), r)
        } else {
            let eps = Rat::from_float(1e-8).unwrap();
            let a = Rat::from_float(z0).unwrap() - &eps;
            let b = Rat::from_float(z0).unwrap() + &eps;
            let pa = eval_rat(&min_poly, &a);
            let pb = eval_rat(&min_poly, &b);
            assert!(
                pa.is_negative() && pb.is_positive(),
                "failed to isolate 2cos(pi/{m})"
            );
            (a, b)
        };
        Arc::new(NumberField {
            m,
            min_poly,
            enclosure: Mutex::new(enclosure),
        })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The `m` with `z = 2cos(pi/m)`, or 0 for the rational field.
    pub fn generator_order(&self) -> u32 {
        self.m
    }

    pub fn min_poly(&self) -> &[Rat] {
        &self.min_poly
    }

    /// Human-readable minimal polynomial, e.g. `z^2-z-1`.
    pub fn min_poly_string(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.min_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if !s.is_empty() || c.is_negative() {
                s.push(if c.is_negative() { '-' } else { '+' });
            }
            if k == 0 || !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            if k >= 1 {
                s.push('z');
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
        s
    }

    fn z_f64(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else if self.degree() == 1 {
            (-self.min_poly[0].clone()).to_f64().unwrap()
        } else {
            2.0 * (std::f64::consts::PI / self.m as f64).cos()
        }
    }

    fn refine_enclosure(&self) {
        let mut guard = self.enclosure.lock().unwrap();
        let (a, b) = guard.clone();
        if a == b {
            return;
        }
        let mut a = a;
        let mut b = b;
        for _ in 0..8 {
            let mid = (&a + &b) / rat(2);
            if eval_rat(&self.min_poly, &mid).is_negative() {
                a = mid;
            } else {
                b = mid;
            }
        }
        *guard = (a, b);
    }

    fn enclosure(&self) -> (Rat, Rat) {
        self.enclosure.lock().unwrap().clone()
    }
}

fn eval_rat(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || (a.m == b.m && a.min_poly == b.min_poly)
}

// ---------------------------------------------------------------------------
// scalars
// ---------------------------------------------------------------------------

/// An element of the ambient number field, as a reduced polynomial in `z`.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<NumberField>,
    /// Little-endian, length == field.degree().
    coeffs: Vec<Rat>,
}

impl Scalar {
    pub fn zero(field: &Arc<NumberField>) -> Scalar {
        Scalar {
            field: field.clone(),
            coeffs: vec![Rat::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Scalar {
        Scalar::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: &Arc<NumberField>, r: Rat) -> Scalar {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = r;
        Scalar { field: field.clone(), coeffs }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Scalar {
        Scalar::from_rat(field, rat(n))
    }

    /// The generator `z = 2cos(pi/m)` of the field.
    pub fn z(field: &Arc<NumberField>) -> Scalar {
        if field.degree() == 1 {
            Scalar::from_rat(field, -field.min_poly[0].clone())
        } else {
            let mut coeffs = vec![Rat::zero(); field.degree()];
            coeffs[1] = Rat::one();
            Scalar { field: field.clone(), coeffs }
        }
    }

    /// `cos(pi/k)` for `k` dividing the field's `m` (equals `C_{m/k}(z)/2`).
    pub fn cos_pi_over(field: &Arc<NumberField>, k: u32) -> Scalar {
        assert!(field.m > 0 && field.m % k == 0, "cos(pi/{k}) not in Q(2cos(pi/{}))", field.m);
        let steps = field.m / k;
        let z = Scalar::z(field);
        let mut prev = Scalar::from_int(field, 2);
        let mut cur = z.clone();
        if steps == 0 {
            unreachable!();
        }
        for _ in 1..steps {
            let next = &(&z * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        &cur / &Scalar::from_int(field, 2)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational value, if the element is rational.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        match self.as_rat() {
            Some(r) => r.is_integer(),
            None => false,
        }
    }

    /// Exact sign: -1, 0, or +1 in the real embedding.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rat() {
            return if r.is_positive() { 1 } else { -1 };
        }
        loop {
            let (a, b) = self.field.enclosure();
            let zint = Interval { lo: a, hi: b };
            let mut acc = Interval::point(Rat::zero());
            for c in self.coeffs.iter().rev() {
                acc = acc.mul(&zint).add(&Interval::point(c.clone()));
            }
            if acc.lo.is_positive() {
                return 1;
            }
            if acc.hi.is_negative() {
                return -1;
            }
            self.field.refine_enclosure();
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn to_f64(&self) -> f64 {
        let z = self.field.z_f64();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap();
        }
        acc
    }

    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        if let Some(r) = self.as_rat() {
            return Scalar::from_rat(&self.field, r.recip());
        }
        let inv = poly_inverse(&self.coeffs, &self.field.min_poly);
        let mut coeffs = inv;
        coeffs.resize(self.field.degree(), Rat::zero());
        Scalar { field: self.field.clone(), coeffs }
    }

    fn reduce(field: &Arc<NumberField>, p: Vec<Rat>) -> Scalar {
        let mut r = poly_rem(&p, &field.min_poly);
        r.resize(field.degree(), Rat::zero());
        Scalar { field: field.clone(), coeffs: r }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(same_field(&self.field, &other.field));
        self.coeffs == other.coeffs
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() && !c.is_negative() {
                s.push('+');
            }
            if k == 0 {
                s.push_str(&c.to_string());
            } else {
                if c.is_negative() {
                    s.push('-');
                }
                let mag = c.abs();
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push('z');
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $impl:expr) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                debug_assert!(same_field(&self.field, &rhs.field));
                #[allow(clippy::redundant_closure_call)]
                ($impl)(self, rhs)
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a: &Scalar, b: &Scalar| {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x + y)
        .collect();
    Scalar { field: a.field.clone(), coeffs }
});

scalar_binop!(Sub, sub, |a: &Scalar, b: &Scalar| {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x - y)
        .collect();
    Scalar { field: a.field.clone(), coeffs }
});

scalar_binop!(Mul, mul, |a: &Scalar, b: &Scalar| {
    if a.field.degree() == 1 {
        return Scalar::from_rat(&a.field, &a.coeffs[0] * &b.coeffs[0]);
    }
    Scalar::reduce(&a.field, poly_mul(&a.coeffs, &b.coeffs))
});

scalar_binop!(Div, div, |a: &Scalar, b: &Scalar| a * &b.inverse());

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl std::ops::SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}
