//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! Elements are represented in the power basis 1, ζ, …, ζ^{φ(N)−1} modulo
//! the N-th cyclotomic polynomial, with exact rational coefficients.  The
//! generator ζ_N stands for the eigenvalue of angle 1/N, so an [`Angle`]
//! a/b embeds as ζ_b^a; the dictionary is purely formal and consistent
//! throughout (Jordan extraction reads ζ_N^k back as the angle k/N).
//!
//! Mixed orders are handled by embedding both operands into the compositum
//! ℚ(ζ_lcm) first.  Division is exact field division (extended Euclid
//! against the irreducible modulus).

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

thread_local! {
    static CYCLO_CACHE: RefCell<BTreeMap<u64, Vec<BigInt>>> = RefCell::new(BTreeMap::new());
}

/// Coefficients (low to high, monic) of the N-th cyclotomic polynomial,
/// computed by exact division Φ_N = (x^N − 1) / Π_{d|N, d<N} Φ_d.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(hit) = CYCLO_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return hit;
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut poly = num;
    for d in 1..n {
        if n % d == 0 {
            poly = int_poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    CYCLO_CACHE.with(|c| c.borrow_mut().insert(n, poly.clone()));
    poly
}

/// Exact division of integer polynomials (remainder known to vanish).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

fn modulus_rational(n: u64) -> Vec<BigRational> {
    cyclotomic_polynomial(n)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}

/// Element of ℚ(ζ_order) in the reduced power basis.
#[derive(Clone)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<BigRational>, // length φ(order)
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_b^a for the angle a/b, i.e. the eigenvalue exp(−2iπ a/b) in the
    /// fixed formal dictionary.
    pub fn root_of_unity(angle: &Angle) -> Self {
        let order = angle.denominator();
        let mut poly = vec![BigRational::zero(); angle.numerator() as usize + 1];
        poly[angle.numerator() as usize] = BigRational::one();
        Cyclo::from_poly(order, poly)
    }

    fn from_poly(order: u64, poly: Vec<BigRational>) -> Self {
        let phi = euler_phi(order) as usize;
        let modulus = modulus_rational(order);
        let mut rem = poly_rem(poly, &modulus);
        rem.resize(phi, BigRational::zero());
        Cyclo { order, coeffs: rem }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embeds into ℚ(ζ_target); `target` must be a multiple of the order.
    pub fn embed(&self, target: u64) -> Self {
        assert!(
            target % self.order == 0,
            "cannot embed order {} into {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len() * step];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if poly.len() <= k * step {
                    poly.resize(k * step + 1, BigRational::zero());
                }
                poly[k * step] = c.clone();
            }
        }
        Cyclo::from_poly(target, poly)
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo, u64) {
        let n = a.order.lcm(&b.order);
        (a.embed(n), b.embed(n), n)
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = Cyclo::common(self, other);
        Cyclo {
            order: n,
            coeffs: a
                .coeffs
                .iter()
                .zip(b.coeffs.iter())
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = Cyclo::common(self, other);
        Cyclo {
            order: n,
            coeffs: a
                .coeffs
                .iter()
                .zip(b.coeffs.iter())
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        let (a, b, n) = Cyclo::common(self, other);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclo::from_poly(n, prod)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.is_rational() {
            return Ok(Cyclo {
                order: self.order,
                coeffs: {
                    let mut v = vec![BigRational::zero(); self.coeffs.len()];
                    v[0] = q.recip();
                    v
                },
            });
        }
        let modulus = modulus_rational(self.order);
        let inv = poly_mod_inverse(&self.coeffs, &modulus)?;
        Ok(Cyclo::from_poly(self.order, inv))
    }

    pub fn div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Cyclo::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if k == 0 {
                    terms.push(format!("{c}"));
                } else {
                    terms.push(format!("{c}*z{}^{k}", self.order));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Remainder of `poly` modulo the monic `modulus` (coefficients low→high).
fn poly_rem(mut poly: Vec<BigRational>, modulus: &[BigRational]) -> Vec<BigRational> {
    let d = modulus.len() - 1;
    while poly.len() > d {
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let k = poly.len() - d; // current degree is poly.len(), leading coeff c
        for (j, mj) in modulus.iter().take(d).enumerate() {
            let t = &c * mj;
            poly[k + j] -= t;
        }
    }
    poly
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Inverse of `a` modulo the irreducible monic `modulus`, by extended
/// Euclid over ℚ[x].
fn poly_mod_inverse(a: &[BigRational], modulus: &[BigRational]) -> Result<Vec<BigRational>> {
    // invariants: r0 = s0·a mod modulus, r1 = s1·a mod modulus
    let mut r0: Vec<BigRational> = modulus.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while let Some(d1) = poly_degree(&r1) {
        if d1 == 0 {
            // unit: divide through
            let c = r1[0].recip();
            return Ok(s1.iter().map(|x| x * &c).collect());
        }
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    Err(Error::DivisionByZero)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len().saturating_sub(dd)];
    loop {
        match poly_degree(&rem) {
            Some(dn) if dn >= dd => {
                let c = &rem[dn] / &lead;
                quot[dn - dd] = c.clone();
                for j in 0..=dd {
                    let t = &c * &den[j];
                    rem[dn - dd + j] -= t;
                }
            }
            _ => break,
        }
    }
    (quot, rem)
}

/// Extracts the angle of a root of unity, or None if the element is not a
/// power of ζ_order (or of ζ_{2·order} when the order is odd).
pub fn angle_of_root(c: &Cyclo) -> Option<Angle> {
    let order = if c.order.is_odd() { c.order * 2 } else { c.order };
    for k in 0..order {
        let angle = Angle::new(k as i64, order as i64).ok()?;
        if *c == Cyclo::root_of_unity(&angle) {
            return Some(angle);
        }
    }
    None
}
