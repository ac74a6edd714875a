//! Primitive central idempotents of `F_p[z]/<z^{rk} - 1>` and `F_p[z]/<z^k - gamma>`.
//!
//! With `r` the order of `gamma` and `w` a primitive `rk`-th root of unity with
//! `w^k = gamma` (see [`PrimeField::find_root`]), the roots of `z^k - gamma` are
//! `w^{1 + t r}` for `t < k`. The constacyclic member `t` is the interpolant that
//! is 1 at `w^{1 + t r}` and 0 at the other roots. The same constructor serves
//! the `y` axis with `(l, beta)`.

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::poly::Poly;
use crate::verify::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Idempotents of `F_p[z]/<z^{rk} - 1>`, one per `rk`-th root of unity.
    FullCycle,
    /// Idempotents of `F_p[z]/<z^k - gamma>`, one per root of `z^k - gamma`.
    Constacyclic,
}

/// A constant known to be `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(field: PrimeField, c: u32, what: &'static str) -> Result<Sign> {
        if c == 1 {
            Ok(Sign::Plus)
        } else if c == field.modulus() - 1 {
            Ok(Sign::Minus)
        } else {
            Err(Error::UnsupportedConstant {
                what,
                value: c,
                p: field.modulus(),
            })
        }
    }
}

/// Index `u` such that the reciprocal of member `t` is a nonzero multiple of
/// member `u`: `(k - 2 - t) mod k` for `+1`, `k - 1 - t` for `-1`.
pub fn reciprocal_index(sign: Sign, k: usize, t: usize) -> Result<usize> {
    if t >= k {
        return Err(Error::IndexOutOfRange { index: t, len: k });
    }
    Ok(match sign {
        Sign::Plus => (2 * k - 2 - t) % k,
        Sign::Minus => k - 1 - t,
    })
}

#[derive(Clone, Debug)]
pub struct IdempotentFamily {
    pub kind: FamilyKind,
    pub field: PrimeField,
    /// Block length `k` (or `l` for the `y` axis).
    pub k: usize,
    pub gamma: u32,
    /// Multiplicative order of `gamma`.
    pub r: usize,
    pub omega: u32,
    pub members: Vec<Poly>,
    /// `roots[t]` is the point where `members[t]` evaluates to 1.
    pub roots: Vec<u32>,
}

fn setup(field: PrimeField, k: usize, gamma: u32) -> Result<(usize, u32)> {
    if k == 0 {
        return Err(Error::InvalidBlockLength { name: "k" });
    }
    let r = field.order(gamma)?;
    let rk = r * k as u64;
    if rk.is_multiple_of(u64::from(field.modulus())) {
        return Err(Error::RepeatedRoots {
            modulus: rk,
            p: field.modulus(),
        });
    }
    let omega = field.find_root(k as u64, gamma)?;
    Ok((r as usize, omega))
}

/// Idempotents `xi_t` of `F_p[z]/<z^{rk} - 1>` from the closed form
/// `xi_t = (1/rk) sum_i (w^{rk - t} z)^i`.
pub fn build_full_idempotents(field: PrimeField, k: usize, gamma: u32) -> Result<IdempotentFamily> {
    let (r, omega) = setup(field, k, gamma)?;
    let rk = r * k;
    let scale = field.inv(field.reduce(rk as i64))?;
    let mut members = Vec::with_capacity(rk);
    let mut roots = Vec::with_capacity(rk);
    for t in 0..rk {
        let step = field.pow(omega, (rk - t) as u64);
        let mut c = scale;
        let coeffs = (0..rk)
            .map(|_| {
                let out = c;
                c = field.mul(c, step);
                out
            })
            .collect();
        members.push(Poly::new(field, coeffs));
        roots.push(field.pow(omega, t as u64));
    }
    Ok(IdempotentFamily {
        kind: FamilyKind::FullCycle,
        field,
        k,
        gamma,
        r,
        omega,
        members,
        roots,
    })
}

/// Idempotents `zeta_t` of `F_p[z]/<z^k - gamma>`:
/// `zeta_t = (z^k - gamma) / ((z - rho_t) * k * rho_t^{k-1})` with `rho_t = w^{1 + t r}`.
pub fn build_constacyclic_idempotents(
    field: PrimeField,
    k: usize,
    gamma: u32,
) -> Result<IdempotentFamily> {
    let (r, omega) = setup(field, k, gamma)?;
    let modulus = Poly::binomial(field, k, gamma);
    let mut members = Vec::with_capacity(k);
    let mut roots = Vec::with_capacity(k);
    for t in 0..k {
        let rho = field.pow(omega, (1 + t * r) as u64);
        let linear = Poly::new(field, vec![field.neg(rho), 1]);
        let quotient = modulus
            .exact_div(&linear)?
            .expect("rho is a root of z^k - gamma");
        // the derivative k z^{k-1} at rho
        let deriv = field.mul(field.reduce(k as i64), field.pow(rho, k as u64 - 1));
        members.push(quotient.scale(field.inv(deriv)?));
        roots.push(rho);
    }
    Ok(IdempotentFamily {
        kind: FamilyKind::Constacyclic,
        field,
        k,
        gamma,
        r,
        omega,
        members,
        roots,
    })
}

impl IdempotentFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `z^{rk} - 1` or `z^k - gamma`.
    pub fn modulus(&self) -> Poly {
        match self.kind {
            FamilyKind::FullCycle => Poly::binomial(self.field, self.r * self.k, 1),
            FamilyKind::Constacyclic => Poly::binomial(self.field, self.k, self.gamma),
        }
    }

    pub fn member(&self, t: usize) -> Result<&Poly> {
        self.members.get(t).ok_or(Error::IndexOutOfRange {
            index: t,
            len: self.members.len(),
        })
    }

    /// `root_t^power`: multiplying member `t` by `z^power` scales it by this value.
    pub fn eigenfactor(&self, t: usize, power: u64) -> Result<u32> {
        let root = *self.roots.get(t).ok_or(Error::IndexOutOfRange {
            index: t,
            len: self.roots.len(),
        })?;
        Ok(self.field.pow(root, power))
    }

    fn mul_mod(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
            .and_then(|p| p.rem(&self.modulus()))
            .expect("same field")
    }

    /// The identity checks that hold for this family on its own.
    fn own_checks(&self, label: &str) -> Vec<Check> {
        let f = self.field;
        let mut checks = Vec::new();
        let modulus = self.modulus();

        let sum = self
            .members
            .iter()
            .try_fold(Poly::zero(f), |acc, m| acc.add(m))
            .expect("same field");
        checks.push(Check::new(
            format!("{label}: members sum to 1"),
            sum.rem(&modulus).expect("nonzero modulus") == Poly::one(f),
            String::new(),
        ));

        let mut bad = Vec::new();
        for (t, a) in self.members.iter().enumerate() {
            for (u, b) in self.members.iter().enumerate() {
                let prod = self.mul_mod(a, b);
                let want = if t == u { a.clone() } else { Poly::zero(f) };
                if prod != want {
                    bad.push((t, u));
                }
            }
        }
        checks.push(Check::new(
            format!("{label}: pairwise orthogonal idempotents"),
            bad.is_empty(),
            format!("{bad:?}"),
        ));

        let mut bad = Vec::new();
        for (t, m) in self.members.iter().enumerate() {
            for (u, &root) in self.roots.iter().enumerate() {
                let want = u32::from(t == u);
                if m.eval(root) != want {
                    bad.push((t, u));
                }
            }
        }
        checks.push(Check::new(
            format!("{label}: member t is 1 at root t and 0 at the others"),
            bad.is_empty(),
            format!("{bad:?}"),
        ));

        let z = Poly::monomial(f, 1, 1);
        let mut bad = Vec::new();
        for (t, m) in self.members.iter().enumerate() {
            let lhs = self.mul_mod(&z, m);
            let rhs = m.scale(self.eigenfactor(t, 1).expect("index in range"));
            if lhs != rhs {
                bad.push(t);
            }
        }
        checks.push(Check::new(
            format!("{label}: z * member t = root_t * member t"),
            bad.is_empty(),
            format!("{bad:?}"),
        ));
        checks
    }
}

/// Reciprocal of `zeta_t` as `b_t * zeta_u`; returns `b_t` when the relation holds.
pub fn reciprocal_scalar(fam: &IdempotentFamily, t: usize, u: usize) -> Option<u32> {
    let recip = fam.members.get(t)?.reciprocal();
    let target = fam.members.get(u)?;
    // target is 1 at its own root, so b_t is the value of the reciprocal there
    let b = recip.eval(fam.roots[u]);
    (b != 0 && recip == target.scale(b)).then_some(b)
}

/// Scalar `c_t` with `zeta_t * Q = c_t * xi_{1+tr}` modulo `z^{rk} - 1`, where
/// `Q = (z^{rk} - 1)/(z^k - gamma)`.
pub fn lift_scalar(zeta: &IdempotentFamily, xi: &IdempotentFamily, t: usize) -> Option<u32> {
    let f = zeta.field;
    let rk = zeta.r * zeta.k;
    let full_mod = Poly::binomial(f, rk, 1);
    let q = full_mod.exact_div(&zeta.modulus()).ok()??;
    let lifted = zeta.members.get(t)?.mul(&q).ok()?.rem(&full_mod).ok()?;
    let idx = (1 + t * zeta.r) % rk;
    let target = xi.members.get(idx)?;
    let c = lifted.eval(xi.roots[idx]);
    (c != 0 && lifted == target.scale(c)).then_some(c)
}

/// Runs the full identity suite for `(k, gamma)` over `field`.
pub fn identity_suite(field: PrimeField, k: usize, gamma: u32) -> Result<Vec<Check>> {
    let zeta = build_constacyclic_idempotents(field, k, gamma)?;
    let xi = build_full_idempotents(field, k, gamma)?;
    let label = format!("F_{} k={k} gamma={gamma}", field.modulus());
    let mut checks = zeta.own_checks(&format!("{label} zeta"));
    checks.extend(xi.own_checks(&format!("{label} xi")));

    let lifts: Vec<Option<u32>> = (0..k).map(|t| lift_scalar(&zeta, &xi, t)).collect();
    checks.push(Check::new(
        format!("{label}: xi_(1+tr) is a nonzero multiple of zeta_t * Q"),
        lifts.iter().all(Option::is_some),
        format!("c_t = {lifts:?}"),
    ));

    if zeta.r == 1 {
        let ok = (0..k).all(|t| zeta.members[t] == xi.members[(t + 1) % k]);
        checks.push(Check::new(
            format!("{label}: r = 1 gives zeta_t = xi_(t+1), zeta_(k-1) = xi_0"),
            ok,
            String::new(),
        ));
    }

    if let Ok(sign) = Sign::of(field, gamma, "reciprocal index") {
        let scalars: Vec<Option<u32>> = (0..k)
            .map(|t| reciprocal_scalar(&zeta, t, reciprocal_index(sign, k, t).ok()?))
            .collect();
        checks.push(Check::new(
            format!("{label}: reciprocal of zeta_t is b_t * zeta_(reciprocal index)"),
            scalars.iter().all(Option::is_some),
            format!("b_t = {scalars:?}"),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn coeffs(p: &Poly) -> Vec<u32> {
        let mut c = p.coeffs().to_vec();
        c.resize(c.len().max(1), 0);
        c
    }

    /// Product-quotient form: prod_{u != t} (z - rho_u) / (rho_t - rho_u).
    fn product_form(field: PrimeField, roots: &[u32], t: usize) -> Poly {
        let mut num = Poly::one(field);
        let mut den = 1;
        for (u, &ru) in roots.iter().enumerate() {
            if u == t {
                continue;
            }
            num = num.mul(&Poly::new(field, vec![field.neg(ru), 1])).unwrap();
            den = field.mul(den, field.sub(roots[t], ru));
        }
        num.scale(field.inv(den).unwrap())
    }

    #[test]
    fn example_families() {
        let f5 = fp(5);
        let z = build_constacyclic_idempotents(f5, 2, 4).unwrap();
        assert_eq!(z.omega, 2);
        assert_eq!(coeffs(&z.members[0]), vec![3, 4]);
        assert_eq!(coeffs(&z.members[1]), vec![3, 1]);

        let f7 = fp(7);
        let z = build_constacyclic_idempotents(f7, 3, 6).unwrap();
        assert_eq!(coeffs(&z.members[0]), vec![5, 4, 6]);
        assert_eq!(coeffs(&z.members[1]), vec![5, 2, 5]);
        assert_eq!(coeffs(&z.members[2]), vec![5, 1, 3]);

        for (p, gamma) in [(5, 1), (7, 3), (13, 12)] {
            let z = build_constacyclic_idempotents(fp(p), 1, gamma).unwrap();
            assert_eq!(z.members, vec![Poly::one(fp(p))]);
        }
    }

    #[test]
    fn full_family_examples() {
        let f5 = fp(5);
        let xi = build_full_idempotents(f5, 1, 1).unwrap();
        assert_eq!(xi.members, vec![Poly::one(f5)]);

        // 1/2 = 3 mod 5, so xi_0 = 3 + 3z
        let xi = build_full_idempotents(f5, 2, 1).unwrap();
        assert_eq!(coeffs(&xi.members[0]), vec![3, 3]);

        let xi = build_full_idempotents(f5, 2, 4).unwrap();
        let w = xi.omega;
        assert_eq!(w, 2);
        for t in 0..4 {
            let want = u32::from(t == 1);
            assert_eq!(xi.members[1].eval(f5.pow(w, t)), want);
        }
    }

    #[test]
    fn constructions_match_product_forms() {
        for p in [5u64, 7, 11, 13] {
            let f = fp(p);
            for gamma in 1..p as u32 {
                for k in 1..=6 {
                    let Ok(zeta) = build_constacyclic_idempotents(f, k, gamma) else {
                        continue;
                    };
                    for t in 0..k {
                        assert_eq!(zeta.members[t], product_form(f, &zeta.roots, t));
                    }
                    let xi = build_full_idempotents(f, k, gamma).unwrap();
                    for t in 0..xi.len() {
                        assert_eq!(xi.members[t], product_form(f, &xi.roots, t));
                    }
                }
            }
        }
    }

    #[test]
    fn eigenfactors() {
        let f5 = fp(5);
        let z = build_constacyclic_idempotents(f5, 2, 4).unwrap();
        assert_eq!(z.eigenfactor(1, 0), Ok(1));
        assert_eq!(z.eigenfactor(0, 1), Ok(2));
        let z = build_constacyclic_idempotents(fp(7), 3, 6).unwrap();
        // w = 3, (w^3)^2 = 3^6 = 1 mod 7
        assert_eq!(z.eigenfactor(1, 2), Ok(1));
        assert!(z.eigenfactor(3, 1).is_err());
    }

    #[test]
    fn reciprocal_indices() {
        assert_eq!(reciprocal_index(Sign::Minus, 2, 0), Ok(1));
        assert_eq!(reciprocal_index(Sign::Plus, 3, 2), Ok(2));
        assert_eq!(reciprocal_index(Sign::Plus, 3, 0), Ok(1));
        assert!(Sign::of(fp(7), 2, "gamma").is_err());
        for k in 1..8 {
            for sign in [Sign::Plus, Sign::Minus] {
                for t in 0..k {
                    let u = reciprocal_index(sign, k, t).unwrap();
                    assert_eq!(reciprocal_index(sign, k, u).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn repeated_roots_rejected() {
        // k = 5 over F_5 with gamma = 1: no root of unity anyway, but p | rk first
        assert!(matches!(
            build_constacyclic_idempotents(fp(5), 5, 1),
            Err(Error::RepeatedRoots { .. })
        ));
        assert!(matches!(
            build_full_idempotents(fp(5), 3, 1),
            Err(Error::MissingRootOfUnity { r: 1, k: 3, p: 5 })
        ));
    }

    #[test]
    fn suite_passes_on_examples() {
        for (p, k, gamma) in [(5, 2, 4), (7, 3, 6), (7, 2, 2), (13, 4, 1), (13, 6, 12)] {
            let checks = identity_suite(fp(p), k, gamma).unwrap();
            for c in &checks {
                assert!(c.passed, "{} {}", c.name, c.detail);
            }
        }
    }
}
