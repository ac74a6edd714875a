//! JSON spec and result files, plus CSV and computer-algebra exports.
//!
//! All serialized values are canonical residues in `[0, q)`. Polynomials are
//! ascending coefficient arrays, constant term first, without trailing zeros.

use serde::{Deserialize, Serialize};

use crate::codes::{validate_spec, BuiltCode, CodeSpec, QuasiTwistedReport, SelfDualDecision};
use crate::distance::DistanceResult;
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ring3d::RingParams;
use crate::verify::Check;

/// Longest code accepted from a file, `s * l * k`.
pub const MAX_LENGTH: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub q: u64,
    pub s: usize,
    pub l: usize,
    pub k: usize,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    /// `p[t][j]` holds the coefficients of `p_j^(t)(x)`.
    pub p: Vec<Vec<Vec<u32>>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::SpecFile(msg.into())
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<SpecFile> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_json_line(self)
    }

    /// The normalized form of a validated spec.
    pub fn from_spec(spec: &CodeSpec) -> SpecFile {
        let r = spec.ring();
        SpecFile {
            q: u64::from(r.field.modulus()),
            s: r.s,
            l: r.l,
            k: r.k,
            alpha: r.alpha,
            beta: r.beta,
            gamma: r.gamma,
            p: spec
                .grid()
                .iter()
                .map(|row| row.iter().map(|p| p.coeffs().to_vec()).collect())
                .collect(),
        }
    }

    pub fn ring(&self) -> Result<RingParams> {
        let field = PrimeField::new(self.q)?;
        let q = field.modulus();
        let n = self
            .s
            .checked_mul(self.l)
            .and_then(|x| x.checked_mul(self.k));
        if !n.is_some_and(|n| n <= MAX_LENGTH) {
            return Err(bad(format!("length s*l*k must be at most {MAX_LENGTH}")));
        }
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if v >= q {
                return Err(bad(format!(
                    "{name} = {v} is not a canonical residue mod {q}"
                )));
            }
        }
        RingParams::new(
            field,
            (self.s, self.l, self.k),
            (self.alpha, self.beta, self.gamma),
        )
    }

    /// Parses the ring and grid and runs [`validate_spec`].
    pub fn to_code_spec(&self) -> Result<CodeSpec> {
        let ring = self.ring()?;
        let q = ring.field.modulus();
        let mut grid = Vec::with_capacity(self.p.len());
        for (t, row) in self.p.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, coeffs) in row.iter().enumerate() {
                if let Some(&c) = coeffs.iter().find(|&&c| c >= q) {
                    return Err(bad(format!(
                        "p[{t}][{j}] has coefficient {c}, not a residue mod {q}"
                    )));
                }
                if coeffs.len() > self.s + 1 {
                    return Err(bad(format!("p[{t}][{j}] has more than s + 1 coefficients")));
                }
                out.push(Poly::new(ring.field, coeffs.clone()));
            }
            grid.push(out);
        }
        validate_spec(ring, grid)
    }
}

/// `c[t][j][i]`, the coefficient of `x^i y^j z^t`.
pub type CoefficientTensor = Vec<Vec<Vec<u32>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub t: usize,
    pub j: usize,
    pub coeffs: CoefficientTensor,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual_certificate: Option<SelfDualDecision>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasi_twisted: Option<QuasiTwistedReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub spec: SpecFile,
    pub n: usize,
    pub dimension: usize,
    pub generators: Vec<GeneratorEntry>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<u32>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub verdicts: Verdicts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
}

fn tensor(ring: &RingParams, flat: &[u32]) -> CoefficientTensor {
    (0..ring.k)
        .map(|t| {
            (0..ring.l)
                .map(|j| (0..ring.s).map(|i| flat[ring.index(i, j, t)]).collect())
                .collect()
        })
        .collect()
}

impl ResultFile {
    /// Spec echo, generators and `G` of a built code; other fields empty.
    pub fn from_code(code: &BuiltCode) -> ResultFile {
        let ring = code.spec.ring();
        ResultFile {
            spec: SpecFile::from_spec(&code.spec),
            n: code.spec.length(),
            dimension: code.dimension,
            generators: code
                .generators
                .iter()
                .map(|g| GeneratorEntry {
                    t: g.t,
                    j: g.j,
                    coeffs: tensor(ring, g.element.as_slice()),
                })
                .collect(),
            g: code.g.row_vecs(),
            h: None,
            verdicts: Verdicts::default(),
            distance: None,
            checks: None,
        }
    }

    pub fn from_json(text: &str) -> Result<ResultFile> {
        let r: ResultFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        to_json_line(self)
    }

    /// Checks shapes and that every stored integer is a canonical residue.
    pub fn validate(&self) -> Result<()> {
        let ring = self.spec.ring()?;
        let q = ring.field.modulus();
        let n = ring.len();
        if self.n != n {
            return Err(bad(format!("n = {} but s*l*k = {n}", self.n)));
        }
        let residues = |what: &str, rows: &[Vec<u32>], width: usize| -> Result<()> {
            for row in rows {
                if row.len() != width {
                    return Err(bad(format!(
                        "{what} row has length {}, expected {width}",
                        row.len()
                    )));
                }
                if row.iter().any(|&c| c >= q) {
                    return Err(bad(format!("{what} holds a value outside [0, {q})")));
                }
            }
            Ok(())
        };
        residues("G", &self.g, n)?;
        if self.g.len() != self.dimension {
            return Err(bad("G row count differs from the dimension"));
        }
        if let Some(h) = &self.h {
            residues("H", h, n)?;
        }
        for g in &self.generators {
            if g.t >= ring.k || g.j >= ring.l || g.coeffs.len() != ring.k {
                return Err(bad("generator index or shape out of range"));
            }
            for block in &g.coeffs {
                residues("generator", block, ring.s)?;
                if block.len() != ring.l {
                    return Err(bad("generator tensor has the wrong shape"));
                }
            }
        }
        if let Some(d) = &self.distance {
            if let Some(w) = &d.witness {
                residues("witness", std::slice::from_ref(w), n)?;
            }
        }
        Ok(())
    }

    pub fn g_matrix(&self) -> Result<Matrix> {
        let ring = self.spec.ring()?;
        Matrix::from_rows(ring.field, ring.len(), &self.g)
    }
}

/// Rows as comma-separated residues, one line per row.
pub fn matrix_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// `G` as CSV, followed by a blank line and `H` when given.
pub fn export_csv(code: &BuiltCode, h: Option<&Matrix>) -> Result<String> {
    if code.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = matrix_csv(&code.g);
    if let Some(h) = h.filter(|h| h.rows() > 0) {
        out.push('\n');
        out.push_str(&matrix_csv(h));
    }
    Ok(out)
}

/// A Magma script declaring the field and generator matrix and printing the
/// length, dimension, minimum distance and self-duality of the code.
pub fn export_cas_script(code: &BuiltCode) -> Result<String> {
    if code.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let ring = code.spec.ring();
    let entries: Vec<String> = code
        .g
        .row_vecs()
        .iter()
        .map(|row| {
            row.iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    Ok(format!(
        "// q = {q}, (s, l, k) = ({s}, {l}, {k}), (alpha, beta, gamma) = ({a}, {b}, {c})\n\
         F := GF({q});\n\
         G := Matrix(F, {rows}, {n}, [\n    {body}\n]);\n\
         C := LinearCode(G);\n\
         print \"[n, k, d] =\", [Length(C), Dimension(C), MinimumDistance(C)];\n\
         print \"self-dual:\", IsSelfDual(C);\n",
        q = ring.field.modulus(),
        s = ring.s,
        l = ring.l,
        k = ring.k,
        a = ring.alpha,
        b = ring.beta,
        c = ring.gamma,
        rows = code.g.rows(),
        n = code.g.cols(),
        body = entries.join(",\n    "),
    ))
}
