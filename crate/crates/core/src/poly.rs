//! Dense univariate polynomials over `F_p`, ascending coefficient order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeField};

/// A polynomial in canonical trimmed form: empty for zero, otherwise the last
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from (possibly unreduced) residues, trimming zeros.
    pub fn new(field: PrimeField, coeffs: Vec<u32>) -> Self {
        let p = field.modulus();
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    pub fn from_signed(field: PrimeField, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: vec![1],
        }
    }

    pub fn constant(field: PrimeField, c: u32) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(field: PrimeField, n: usize, c: u32) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    /// `x^n - c`.
    pub fn binomial(field: PrimeField, n: usize, c: u32) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = field.sub(coeffs[0], c);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let f = self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// `Some(self / divisor)` when the division is exact.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Whether `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.rem(self)?.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, a: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn eval_element(&self, a: FieldElement) -> Result<FieldElement> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: a.field().modulus(),
            });
        }
        Ok(self.field.element(i64::from(self.eval(a.value()))))
    }

    /// `x^deg(f) * f(1/x)`: the coefficient list reversed, then trimmed.
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(self.field, coeffs)
    }

    /// Scales to leading coefficient 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Ordering by degree, then lexicographically by the ascending coefficient tuple.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Renders with variable `var`; `signed` prints residues above p/2 as negatives.
    pub fn render(&self, var: &str, signed: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.field;
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = if signed { f.signed(c) } else { i64::from(c) };
            let (neg, mag) = (v < 0, v.unsigned_abs());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if mag != 1 {
                        out.push_str(&mag.to_string());
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push('^');
                        out.push_str(&i.to_string());
                    }
                }
            }
        }
        out
    }
}

fn trim(coeffs: &mut Vec<u32>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", false))
    }
}

/// Visits every monic polynomial of degree `d`, lexicographically by the
/// ascending coefficient tuple.
fn for_each_monic(field: PrimeField, d: usize, mut visit: impl FnMut(&Poly) -> bool) {
    let p = field.modulus();
    let mut low = vec![0u32; d];
    loop {
        let mut coeffs = low.clone();
        coeffs.push(1);
        if !visit(&Poly { field, coeffs }) {
            return;
        }
        // odometer with the constant term most significant
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

/// Monic irreducible factors of `x^s - alpha` with multiplicities, by trial
/// division over monic candidates in increasing degree.
pub fn factor_binomial(field: PrimeField, s: usize, alpha: u32) -> Result<Vec<(Poly, usize)>> {
    if s == 0 {
        return Err(Error::InvalidBlockLength { name: "s" });
    }
    if alpha.is_multiple_of(field.modulus()) {
        return Err(Error::ZeroConstant { name: "alpha" });
    }
    let mut rest = Poly::binomial(field, s, alpha);
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        for_each_monic(field, d, |cand| {
            let mut mult = 0;
            while let Some(q) = rest.exact_div(cand).expect("monic divisor") {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((cand.clone(), mult));
            }
            rest.degree().unwrap_or(0) >= 2 * d
        });
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        let rest = rest.monic();
        match factors.iter_mut().find(|(f, _)| *f == rest) {
            Some((_, m)) => *m += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(factors)
}

/// Every monic divisor of `x^s - alpha`, in canonical order.
pub fn monic_divisors(field: PrimeField, s: usize, alpha: u32) -> Result<Vec<Poly>> {
    let factors = factor_binomial(field, s, alpha)?;
    let mut divisors = vec![Poly::one(field)];
    for (fac, mult) in &factors {
        let mut next = Vec::with_capacity(divisors.len() * (mult + 1));
        for d in &divisors {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*mult {
                cur = cur.mul(fac)?;
                next.push(cur.clone());
            }
        }
        divisors = next;
    }
    divisors.sort_by(|a, b| a.canonical_cmp(b));
    Ok(divisors)
}

/// Which residues [`cyclotomic_cosets`] should return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSubset {
    All,
    /// Only cosets inside `{1 + r t}`, the exponents of the roots of `z^k - gamma`
    /// when `r` is the order of `gamma` and the modulus is `r k`.
    ConstacyclicRoots {
        r: u64,
    },
}

/// `q`-cyclotomic cosets modulo `modulus`, each sorted, ordered by smallest member.
pub fn cyclotomic_cosets(modulus: u64, q: u64, subset: CosetSubset) -> Result<Vec<Vec<u64>>> {
    if modulus == 0 || gcd(q, modulus) != 1 {
        return Err(Error::CosetDomain { modulus, q });
    }
    let mut seen = vec![false; modulus as usize];
    let mut cosets = Vec::new();
    for start in 0..modulus {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut e = start;
        while !seen[e as usize] {
            seen[e as usize] = true;
            coset.push(e);
            e = (e * q) % modulus;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    if let CosetSubset::ConstacyclicRoots { r } = subset {
        cosets.retain(|c| r != 0 && c.iter().all(|&e| e % r == 1 % r));
    }
    Ok(cosets)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
