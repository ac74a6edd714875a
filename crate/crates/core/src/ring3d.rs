//! Elements of `R = F_p[x,y,z]/<x^s - alpha, y^l - beta, z^k - gamma>`.
//!
//! Coefficients are stored flattened in the z-major layout used as the
//! codeword format everywhere: `c_{i,j,t}` sits at `t*s*l + j*s + i`, so the
//! vector is `(c^(z^0) | ... | c^(z^{k-1}))` with each z-block made of x-runs
//! ordered by `j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    pub field: PrimeField,
    pub s: usize,
    pub l: usize,
    pub k: usize,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl RingParams {
    pub fn new(
        field: PrimeField,
        (s, l, k): (usize, usize, usize),
        (alpha, beta, gamma): (u32, u32, u32),
    ) -> Result<Self> {
        for (name, v) in [("s", s), ("l", l), ("k", k)] {
            if v == 0 {
                return Err(Error::InvalidBlockLength { name });
            }
        }
        let p = field.modulus();
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if v % p == 0 {
                return Err(Error::ZeroConstant { name });
            }
        }
        Ok(RingParams {
            field,
            s,
            l,
            k,
            alpha: alpha % p,
            beta: beta % p,
            gamma: gamma % p,
        })
    }

    /// Code length `s * l * k`.
    pub fn len(&self) -> usize {
        self.s * self.l * self.k
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, t: usize) -> usize {
        t * self.s * self.l + j * self.s + i
    }

    /// `(i, j, t)` for a flattened position.
    #[inline]
    pub fn coords(&self, pos: usize) -> (usize, usize, usize) {
        (
            pos % self.s,
            (pos / self.s) % self.l,
            pos / (self.s * self.l),
        )
    }

    /// The ring with constants `(alpha^-1, beta^-1, gamma^-1)`.
    pub fn inverse(&self) -> RingParams {
        let f = self.field;
        let inv = |c| f.inv(c).expect("nonzero constant");
        RingParams {
            alpha: inv(self.alpha),
            beta: inv(self.beta),
            gamma: inv(self.gamma),
            ..*self
        }
    }

    fn axis_len(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.s,
            Axis::Y => self.l,
            Axis::Z => self.k,
        }
    }

    fn axis_constant(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.alpha,
            Axis::Y => self.beta,
            Axis::Z => self.gamma,
        }
    }

    /// Position of `c_{i,j,t}` in the layout that groups coefficients by powers
    /// of `axis`: `x` gives `(c^(x^0)|...|c^(x^{s-1}))`, `y` gives
    /// `(c^(y^0)|...)`, and `z` gives the canonical flattening.
    pub fn layout_position(&self, axis: Axis, i: usize, j: usize, t: usize) -> usize {
        match axis {
            Axis::X => i * self.l * self.k + t * self.l + j,
            Axis::Y => j * self.s * self.k + i * self.k + t,
            Axis::Z => self.index(i, j, t),
        }
    }

    /// Rewrites a canonical (z-major) vector into the layout for `axis`.
    pub fn to_layout(&self, axis: Axis, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (pos, &c) in v.iter().enumerate() {
            let (i, j, t) = self.coords(pos);
            out[self.layout_position(axis, i, j, t)] = c;
        }
        out
    }

    /// Quasi-twisted block rotation of an `axis`-layout vector:
    /// `(lambda a^(n-1) | a^(0) | ... | a^(n-2))` with `n` the axis length and
    /// `lambda` the axis constant.
    pub fn quasi_twisted_shift(&self, axis: Axis, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let blocks = self.axis_len(axis);
        let m = v.len() / blocks;
        let lambda = self.axis_constant(axis);
        let mut out = Vec::with_capacity(v.len());
        out.extend(v[(blocks - 1) * m..].iter().map(|&c| f.mul(lambda, c)));
        out.extend_from_slice(&v[..(blocks - 1) * m]);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement3D {
    params: RingParams,
    coeffs: Vec<u32>,
}

impl RingElement3D {
    pub fn zero(params: RingParams) -> Self {
        RingElement3D {
            params,
            coeffs: vec![0; params.len()],
        }
    }

    pub fn one(params: RingParams) -> Self {
        RingElement3D::monomial(params, 0, 0, 0, 1)
    }

    /// `c x^i y^j z^t`, with exponents reduced through the ring relations.
    pub fn monomial(params: RingParams, i: usize, j: usize, t: usize, c: u32) -> Self {
        let f = params.field;
        let wraps = [
            (params.alpha, i / params.s),
            (params.beta, j / params.l),
            (params.gamma, t / params.k),
        ];
        let c = wraps.iter().fold(c % f.modulus(), |acc, &(lambda, w)| {
            f.mul(acc, f.pow(lambda, w as u64))
        });
        let mut e = RingElement3D::zero(params);
        e.coeffs[params.index(i % params.s, j % params.l, t % params.k)] = c;
        e
    }

    /// Unflattens a canonical-order vector.
    pub fn from_flat(params: RingParams, v: Vec<u32>) -> Result<Self> {
        if v.len() != params.len() {
            return Err(Error::LengthMismatch {
                expected: params.len(),
                found: v.len(),
            });
        }
        let p = params.field.modulus();
        Ok(RingElement3D {
            params,
            coeffs: v.into_iter().map(|c| c % p).collect(),
        })
    }

    /// `px(x) * py(y) * pz(z)`, each factor first reduced modulo its binomial.
    pub fn from_product(params: RingParams, px: &Poly, py: &Poly, pz: &Poly) -> Result<Self> {
        let f = params.field;
        let px = px.rem(&Poly::binomial(f, params.s, params.alpha))?;
        let py = py.rem(&Poly::binomial(f, params.l, params.beta))?;
        let pz = pz.rem(&Poly::binomial(f, params.k, params.gamma))?;
        let mut e = RingElement3D::zero(params);
        for (t, &cz) in pz.coeffs().iter().enumerate() {
            for (j, &cy) in py.coeffs().iter().enumerate() {
                let cyz = f.mul(cy, cz);
                for (i, &cx) in px.coeffs().iter().enumerate() {
                    e.coeffs[params.index(i, j, t)] = f.mul(cx, cyz);
                }
            }
        }
        Ok(e)
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn coeff(&self, i: usize, j: usize, t: usize) -> u32 {
        self.coeffs[self.params.index(i, j, t)]
    }

    /// The codeword vector `(c^(z^0) | ... | c^(z^{k-1}))`.
    pub fn flatten(&self) -> Vec<u32> {
        self.coeffs.clone()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.params.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(RingElement3D {
            params: self.params,
            coeffs,
        })
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.params.field;
        RingElement3D {
            params: self.params,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Ring product: a 3-D convolution where each wrap past `x^s`, `y^l`, `z^k`
    /// multiplies by `alpha`, `beta`, `gamma` respectively.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let pr = self.params;
        let f = pr.field;
        let mut out = vec![0u32; pr.len()];
        let nz_other: Vec<(usize, usize, usize, u32)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(pos, &c)| {
                let (i, j, t) = pr.coords(pos);
                (i, j, t, c)
            })
            .collect();
        for (pos, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let (i, j, t) = pr.coords(pos);
            for &(i2, j2, t2, b) in &nz_other {
                let mut c = f.mul(a, b);
                let (mut ii, mut jj, mut tt) = (i + i2, j + j2, t + t2);
                if ii >= pr.s {
                    ii -= pr.s;
                    c = f.mul(c, pr.alpha);
                }
                if jj >= pr.l {
                    jj -= pr.l;
                    c = f.mul(c, pr.beta);
                }
                if tt >= pr.k {
                    tt -= pr.k;
                    c = f.mul(c, pr.gamma);
                }
                let idx = pr.index(ii, jj, tt);
                out[idx] = f.add(out[idx], c);
            }
        }
        Ok(RingElement3D {
            params: pr,
            coeffs: out,
        })
    }

    /// Multiplication by `x`, `y` or `z`, done as the block rotation of the
    /// canonical vector with the wrapped block scaled by the axis constant.
    pub fn shift(&self, axis: Axis) -> Self {
        let pr = self.params;
        let f = pr.field;
        let mut out = vec![0u32; pr.len()];
        match axis {
            Axis::Z => {
                let block = pr.s * pr.l;
                let wrap = (pr.k - 1) * block;
                for (o, &c) in out[..block].iter_mut().zip(&self.coeffs[wrap..]) {
                    *o = f.mul(pr.gamma, c);
                }
                out[block..].copy_from_slice(&self.coeffs[..wrap]);
            }
            Axis::Y => {
                for t in 0..pr.k {
                    let base = t * pr.s * pr.l;
                    let wrap = base + (pr.l - 1) * pr.s;
                    for i in 0..pr.s {
                        out[base + i] = f.mul(pr.beta, self.coeffs[wrap + i]);
                    }
                    out[base + pr.s..base + pr.s * pr.l].copy_from_slice(&self.coeffs[base..wrap]);
                }
            }
            Axis::X => {
                for run in 0..pr.l * pr.k {
                    let base = run * pr.s;
                    out[base] = f.mul(pr.alpha, self.coeffs[base + pr.s - 1]);
                    out[base + 1..base + pr.s].copy_from_slice(&self.coeffs[base..base + pr.s - 1]);
                }
            }
        }
        RingElement3D {
            params: pr,
            coeffs: out,
        }
    }

    pub fn shift_by(&self, axis: Axis, n: usize) -> Self {
        (0..n).fold(self.clone(), |e, _| e.shift(axis))
    }

    /// `b*`: x-runs reversed and emitted from `(j, t) = (l-1, k-1)` down to
    /// `(0, 0)`, which is the full reversal of the flattened vector.
    pub fn star(&self) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }
}

fn dot(field: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Returns `(f g = 0, flatten(f) is orthogonal to g* and to every
/// (alpha^-1, beta^-1, gamma^-1)-constacyclic shift of g*)`. The two flags agree.
pub fn annihilator_orthogonality_equiv(
    f: &RingElement3D,
    g: &RingElement3D,
) -> Result<(bool, bool)> {
    f.check(g)?;
    let pr = f.params;
    let product_zero = f.mul(g)?.is_zero();

    let field = pr.field;
    let a = f.as_slice();
    let b_star = RingElement3D::from_flat(pr.inverse(), g.star())?;
    let mut orthogonal = true;
    let mut zb = b_star;
    'outer: for _ in 0..pr.k {
        let mut yb = zb.clone();
        for _ in 0..pr.l {
            let mut xb = yb.clone();
            for _ in 0..pr.s {
                if dot(field, a, xb.as_slice()) != 0 {
                    orthogonal = false;
                    break 'outer;
                }
                xb = xb.shift(Axis::X);
            }
            yb = yb.shift(Axis::Y);
        }
        zb = zb.shift(Axis::Z);
    }
    Ok((product_zero, orthogonal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn params(p: u64, dims: (usize, usize, usize), consts: (i64, i64, i64)) -> RingParams {
        let f = PrimeField::new(p).unwrap();
        RingParams::new(
            f,
            dims,
            (f.reduce(consts.0), f.reduce(consts.1), f.reduce(consts.2)),
        )
        .unwrap()
    }

    fn random_element(pr: RingParams, rng: &mut impl Rng) -> RingElement3D {
        let p = pr.field.modulus();
        RingElement3D::from_flat(pr, (0..pr.len()).map(|_| rng.gen_range(0..p)).collect()).unwrap()
    }

    /// Brute-force product straight from the exponent sums.
    fn naive_mul(a: &RingElement3D, b: &RingElement3D) -> RingElement3D {
        let pr = *a.params();
        let f = pr.field;
        let mut out = RingElement3D::zero(pr);
        for pa in 0..pr.len() {
            for pb in 0..pr.len() {
                let (i, j, t) = pr.coords(pa);
                let (i2, j2, t2) = pr.coords(pb);
                let (es, el, ek) = (i + i2, j + j2, t + t2);
                let mut c = f.mul(a.as_slice()[pa], b.as_slice()[pb]);
                c = f.mul(c, f.pow(pr.alpha, (es / pr.s) as u64));
                c = f.mul(c, f.pow(pr.beta, (el / pr.l) as u64));
                c = f.mul(c, f.pow(pr.gamma, (ek / pr.k) as u64));
                let idx = pr.index(es % pr.s, el % pr.l, ek % pr.k);
                out.coeffs[idx] = f.add(out.coeffs[idx], c);
            }
        }
        out
    }

    #[test]
    fn flatten_examples() {
        let pr = params(5, (2, 2, 2), (1, -1, -1));
        assert_eq!(
            RingElement3D::one(pr).flatten(),
            vec![1, 0, 0, 0, 0, 0, 0, 0]
        );
        let f = pr.field;
        let row = RingElement3D::from_product(
            pr,
            &Poly::from_signed(f, &[-1, 1]),
            &Poly::from_signed(f, &[3, -1]),
            &Poly::from_signed(f, &[3, -1]),
        )
        .unwrap();
        let want: Vec<u32> = [1, -1, -2, 2, -2, 2, -1, 1]
            .iter()
            .map(|&c| f.reduce(c))
            .collect();
        assert_eq!(row.flatten(), want);
        let m = RingElement3D::monomial(pr, 1, 1, 1, 1);
        assert_eq!(m.flatten().iter().position(|&c| c == 1), Some(7));
        assert_eq!(RingElement3D::from_flat(pr, m.flatten()).unwrap(), m);
    }

    #[test]
    fn product_examples() {
        let pr = params(7, (3, 2, 2), (2, 3, 5));
        let x = RingElement3D::monomial(pr, 1, 0, 0, 1);
        let x2 = RingElement3D::monomial(pr, 2, 0, 0, 1);
        assert_eq!(x.mul(&x2).unwrap(), RingElement3D::monomial(pr, 0, 0, 0, 2));

        // (x + y)^2 with every constant 1 and s = l = k = 2: x^2 = y^2 = 1
        let pr = params(5, (2, 2, 2), (1, 1, 1));
        let x = RingElement3D::monomial(pr, 1, 0, 0, 1);
        let y = RingElement3D::monomial(pr, 0, 1, 0, 1);
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap();
        let want = RingElement3D::monomial(pr, 0, 0, 0, 2)
            .add(&RingElement3D::monomial(pr, 1, 1, 0, 2))
            .unwrap();
        assert_eq!(sq, want);
        assert_eq!(sq, naive_mul(&s, &s));
    }

    #[test]
    fn idempotent_lift_is_orthogonal() {
        let pr = params(5, (2, 2, 2), (1, -1, -1));
        let f = pr.field;
        let one = Poly::one(f);
        let z0 =
            RingElement3D::from_product(pr, &one, &one, &Poly::from_signed(f, &[3, -1])).unwrap();
        let z1 =
            RingElement3D::from_product(pr, &one, &one, &Poly::from_signed(f, &[3, 1])).unwrap();
        assert!(z0.mul(&z1).unwrap().is_zero());
        assert_eq!(
            annihilator_orthogonality_equiv(&z0, &z1).unwrap(),
            (true, true)
        );
        assert_eq!(
            annihilator_orthogonality_equiv(&z0, &RingElement3D::zero(pr)).unwrap(),
            (true, true)
        );
    }

    #[test]
    fn mul_matches_naive_and_ring_laws() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for consts in [(1, 1, 1), (-1, 2, 3), (4, -1, 1)] {
            for dims in [(1, 1, 1), (2, 3, 1), (3, 2, 2), (1, 4, 3)] {
                let pr = params(7, dims, consts);
                for _ in 0..10 {
                    let a = random_element(pr, &mut rng);
                    let b = random_element(pr, &mut rng);
                    let c = random_element(pr, &mut rng);
                    let ab = a.mul(&b).unwrap();
                    assert_eq!(ab, naive_mul(&a, &b));
                    assert_eq!(ab, b.mul(&a).unwrap());
                    assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
                    assert_eq!(a.mul(&RingElement3D::one(pr)).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn shifts_are_variable_products() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for dims in [(1, 1, 1), (2, 2, 2), (3, 2, 4), (4, 1, 2)] {
            let pr = params(11, dims, (3, -1, 5));
            let vars = [
                (Axis::X, RingElement3D::monomial(pr, 1, 0, 0, 1)),
                (Axis::Y, RingElement3D::monomial(pr, 0, 1, 0, 1)),
                (Axis::Z, RingElement3D::monomial(pr, 0, 0, 1, 1)),
            ];
            for _ in 0..20 {
                let e = random_element(pr, &mut rng);
                for (axis, var) in &vars {
                    assert_eq!(e.shift(*axis), e.mul(var).unwrap());
                }
                // z-shift: (gamma * last z-block | earlier z-blocks)
                let v = e.flatten();
                let block = pr.s * pr.l;
                let mut want: Vec<u32> = v[v.len() - block..]
                    .iter()
                    .map(|&c| pr.field.mul(pr.gamma, c))
                    .collect();
                want.extend_from_slice(&v[..v.len() - block]);
                assert_eq!(e.shift(Axis::Z).flatten(), want);
            }
        }
        let pr = params(5, (3, 2, 2), (2, 1, 1));
        assert_eq!(
            RingElement3D::one(pr).shift(Axis::Z),
            RingElement3D::monomial(pr, 0, 0, 1, 1)
        );
        assert_eq!(
            RingElement3D::monomial(pr, 2, 0, 0, 1).shift(Axis::X),
            RingElement3D::monomial(pr, 0, 0, 0, 2)
        );
    }

    #[test]
    fn layouts_turn_variable_products_into_quasi_twisted_shifts() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let pr = params(7, (3, 2, 3), (-1, 2, -1));
        for _ in 0..20 {
            let e = random_element(pr, &mut rng);
            for axis in Axis::ALL {
                let lhs = pr.to_layout(axis, &e.shift(axis).flatten());
                let rhs = pr.quasi_twisted_shift(axis, &pr.to_layout(axis, &e.flatten()));
                assert_eq!(lhs, rhs, "{axis:?}");
            }
        }
        // each layout is a permutation
        for axis in Axis::ALL {
            let mut seen: Vec<usize> = (0..pr.len())
                .map(|pos| {
                    let (i, j, t) = pr.coords(pos);
                    pr.layout_position(axis, i, j, t)
                })
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..pr.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn star_examples() {
        let pr = params(5, (2, 2, 2), (1, 1, 1));
        assert_eq!(RingElement3D::one(pr).star(), vec![0, 0, 0, 0, 0, 0, 0, 1]);
        let pr = params(5, (2, 1, 1), (1, 1, 1));
        let e = RingElement3D::from_flat(pr, vec![3, 4]).unwrap();
        assert_eq!(e.star(), vec![4, 3]);
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let pr = params(7, (3, 2, 2), (1, 6, 6));
        let e = random_element(pr, &mut rng);
        let back = RingElement3D::from_flat(pr, e.star()).unwrap().star();
        assert_eq!(back, e.flatten());
        // star is the x-run reversal listed from (l-1, k-1) down to (0, 0)
        let mut by_runs = Vec::new();
        for t in (0..pr.k).rev() {
            for j in (0..pr.l).rev() {
                for i in (0..pr.s).rev() {
                    by_runs.push(e.coeff(i, j, t));
                }
            }
        }
        assert_eq!(e.star(), by_runs);
    }

    #[test]
    fn mismatched_params() {
        let a = RingElement3D::one(params(5, (2, 2, 2), (1, 1, 1)));
        let b = RingElement3D::one(params(5, (2, 2, 2), (1, 1, 4)));
        assert_eq!(a.mul(&b), Err(Error::ParamsMismatch));
        assert!(annihilator_orthogonality_equiv(&a, &b).is_err());
    }
}
