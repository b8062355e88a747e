//! One-point evaluation codes C(D, r P_infinity) on the curve.
//!
//! The Riemann-Roch space L(r P_inf) is spanned by monomials x^a y^b v^c w^d
//! with b <= n1-1, c <= q0-1, d <= q0-1 and pole order at most r. The
//! exponent bounds come from the Apéry structure of the Weierstrass
//! semigroup: within the box, pole orders are pairwise distinct and hit
//! every nongap, so distinct pole orders force linear independence and
//! counting gives spanning.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{pole_order, CurveError, CurveField, CurveParams};
use crate::gf2m::{FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::semigroup::curve_semigroup;

pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("pole-order cap r={r} must be below the code length N={n}")]
    RangeExceeded { r: u64, n: u64 },
    #[error("dual parameter {0} out of range")]
    DualOutOfRange(i64),
    #[error("{words} codewords exceed the enumeration budget {budget}; compute on the dual side instead")]
    BudgetExceeded { words: u64, budget: u64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub xa: u64,
    pub yb: u64,
    pub vc: u64,
    pub wd: u64,
    pub pole: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonomialBasis {
    pub tuples: Vec<Monomial>,
}

/// Basis of L(r P_inf): Apéry-bounded exponent tuples with pole order <= r,
/// sorted by pole order.
pub fn basis_for(params: &CurveParams, r: u64) -> MonomialBasis {
    let mut tuples = Vec::new();
    for yb in 0..params.n1 {
        for vc in 0..params.q0 {
            for wd in 0..params.q0 {
                let base = pole_order(0, yb, vc, wd, params);
                if base > r {
                    continue;
                }
                let mut xa = 0;
                loop {
                    let pole = base + xa * params.q;
                    if pole > r {
                        break;
                    }
                    tuples.push(Monomial { xa, yb, vc, wd, pole });
                    xa += 1;
                }
            }
        }
    }
    tuples.sort_by_key(|t| t.pole);
    MonomialBasis { tuples }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CodeSpec {
    pub params: CurveParams,
    pub r: u64,
    pub ext: u32,
}

#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    pub spec: CodeSpec,
    pub basis: MonomialBasis,
    pub matrix: Matrix,
}

impl GeneratorMatrix {
    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }
}

/// Evaluates the monomial basis of L(r P_inf) at every affine point of the
/// evaluation field, row per monomial, column per point in canonical order.
pub fn gen_matrix(cf: &CurveField, r: u64) -> Result<GeneratorMatrix, CodeError> {
    let basis = basis_for(&cf.params, r);
    let points = cf.points().points;
    let n = points.len() as u64;
    if r >= n {
        return Err(CodeError::RangeExceeded { r, n });
    }
    let mut matrix = Matrix::zeros(cf.field, basis.tuples.len(), points.len());
    for (col, pt) in points.iter().enumerate() {
        let v = cf.eval_v(pt);
        let w = cf.eval_w(pt);
        for (row, t) in basis.tuples.iter().enumerate() {
            let val = pt.x.pow(t.xa)
                .mul(pt.y.pow(t.yb))
                .mul(v.pow(t.vc))
                .mul(w.pow(t.wd));
            matrix.set(row, col, val);
        }
    }
    let spec = CodeSpec { params: cf.params, r, ext: cf.ext };
    Ok(GeneratorMatrix { spec, basis, matrix })
}

/// r_perp = N + 2g - 2 - r; may fall outside [0, N).
pub fn dual_r(n: u64, genus: u64, r: u64) -> i64 {
    n as i64 + 2 * genus as i64 - 2 - r as i64
}

/// d* = N - r, the Goppa designed minimum distance.
pub fn designed_distance(n: u64, r: u64) -> u64 {
    n - r
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub r: u64,
    pub r_dual: u64,
    pub k: usize,
    pub k_dual: usize,
    pub n: usize,
    pub product_is_zero: bool,
    pub dims_sum_to_n: bool,
    pub holds: bool,
}

/// Checks C(D, rQ)^perp = C(D, r_perp Q) concretely: the two generator
/// matrices are orthogonal and their ranks sum to N.
pub fn check_duality(cf: &CurveField, r: u64) -> Result<DualityReport, CodeError> {
    let g = gen_matrix(cf, r)?;
    let n = g.n() as u64;
    let rd = dual_r(n, cf.params.genus, r);
    if rd < 0 || rd as u64 >= n {
        return Err(CodeError::DualOutOfRange(rd));
    }
    let gd = gen_matrix(cf, rd as u64)?;
    let product_is_zero = g.matrix.mul_transpose(&gd.matrix).is_zero();
    let dims_sum_to_n = g.k() + gd.k() == n as usize;
    Ok(DualityReport {
        r,
        r_dual: rd as u64,
        k: g.k(),
        k_dual: gd.k(),
        n: n as usize,
        product_is_zero,
        dims_sum_to_n,
        holds: product_is_zero && dims_sum_to_n,
    })
}

/// Exact minimum Hamming weight by scanning all q^k - 1 nonzero codewords.
pub fn min_distance_exhaustive(g: &GeneratorMatrix, budget: u64) -> Result<u64, CodeError> {
    let field = g.matrix.field();
    let q = 1u64 << field.m();
    let k = g.k() as u32;
    let words = q.checked_pow(k).ok_or(CodeError::BudgetExceeded {
        words: u64::MAX,
        budget,
    })?;
    if words > budget {
        return Err(CodeError::BudgetExceeded { words, budget });
    }
    let n = g.n();
    let mut best = n as u64;
    let mut msg = vec![0u64; k as usize];
    'outer: loop {
        // next message in mixed-radix order
        let mut i = 0;
        loop {
            if i == k as usize {
                break 'outer;
            }
            msg[i] += 1;
            if msg[i] < q {
                break;
            }
            msg[i] = 0;
            i += 1;
        }
        let mut weight = 0u64;
        for col in 0..n {
            let mut acc = field.zero();
            for (row, &m) in msg.iter().enumerate() {
                if m != 0 {
                    acc = acc + field.el(m).unwrap().mul(g.matrix.get(row, col));
                }
            }
            if !acc.is_zero() {
                weight += 1;
                if weight >= best {
                    continue 'outer;
                }
            }
        }
        if weight < best {
            best = weight;
        }
    }
    Ok(best)
}

/// The Castle dimension sequence: r_i = min { r : l(rQ) - l((r-N)Q) >= i }
/// for i = 1..=N, where l(mQ) = |H intersect [0, m]|.
pub fn dimension_sequence(params: &CurveParams) -> Vec<u64> {
    let sg = curve_semigroup(params);
    let n = params.q * params.q;
    let ell = |m: i64| -> u64 {
        if m < 0 {
            0
        } else {
            sg.rho_index(sg.floor_nongap(m as u64)).unwrap() + 1
        }
    };
    let mut out = Vec::with_capacity(n as usize);
    let mut r = 0u64;
    for i in 1..=n {
        while ell(r as i64) - ell(r as i64 - n as i64) < i {
            r += 1;
        }
        out.push(r);
    }
    out
}

// ---- matrix file format: one JSON header line, then CSV rows of hex ----

#[derive(Serialize, Deserialize)]
struct MatrixHeader {
    s: u32,
    h: u32,
    ext: u32,
    r: u64,
    field_m: u32,
    field_modulus: String,
    basis: Vec<(u64, u64, u64, u64)>,
    cols: usize,
}

pub fn write_matrix(g: &GeneratorMatrix, out: &mut impl Write) -> std::io::Result<()> {
    let header = MatrixHeader {
        s: g.spec.params.s,
        h: g.spec.params.h,
        ext: g.spec.ext,
        r: g.spec.r,
        field_m: g.matrix.field().m(),
        field_modulus: format!("{:x}", g.matrix.field().modulus()),
        basis: g.basis.tuples.iter().map(|t| (t.xa, t.yb, t.vc, t.wd)).collect(),
        cols: g.n(),
    };
    writeln!(out, "# {}", serde_json::to_string(&header).unwrap())?;
    for row in 0..g.k() {
        let cells: Vec<String> = (0..g.n()).map(|c| g.matrix.get(row, c).hex()).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn read_matrix(input: &mut impl BufRead) -> Result<GeneratorMatrix, CodeError> {
    let mut first = String::new();
    input
        .read_line(&mut first)
        .map_err(|e| CodeError::Parse(e.to_string()))?;
    let json = first
        .trim()
        .strip_prefix("# ")
        .ok_or_else(|| CodeError::Parse("missing JSON header line".into()))?;
    let header: MatrixHeader =
        serde_json::from_str(json).map_err(|e| CodeError::Parse(e.to_string()))?;
    let params = crate::curve::params_make(header.s, header.h)?;
    let modulus = u128::from_str_radix(&header.field_modulus, 16)
        .map_err(|e| CodeError::Parse(e.to_string()))?;
    let field = FieldSpec::with_modulus(header.field_m, modulus)
        .map_err(|e| CodeError::Parse(e.to_string()))?;
    let mut matrix = Matrix::zeros(field, header.basis.len(), header.cols);
    for row in 0..header.basis.len() {
        let mut line = String::new();
        input
            .read_line(&mut line)
            .map_err(|e| CodeError::Parse(e.to_string()))?;
        let cells: Vec<&str> = line.trim().split(',').collect();
        if cells.len() != header.cols {
            return Err(CodeError::Parse(format!(
                "row {row} has {} cells, expected {}",
                cells.len(),
                header.cols
            )));
        }
        for (col, cell) in cells.iter().enumerate() {
            let v = FieldElement::from_hex(&field, cell)
                .map_err(|e| CodeError::Parse(e.to_string()))?;
            matrix.set(row, col, v);
        }
    }
    let tuples = header
        .basis
        .iter()
        .map(|&(xa, yb, vc, wd)| Monomial {
            xa,
            yb,
            vc,
            wd,
            pole: pole_order(xa, yb, vc, wd, &params),
        })
        .collect();
    Ok(GeneratorMatrix {
        spec: CodeSpec { params, r: header.r, ext: header.ext },
        basis: MonomialBasis { tuples },
        matrix,
    })
}
