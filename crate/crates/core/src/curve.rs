//! The curve X^{q0}(X^q + X) = Y^q + Y over GF(2^s) and its rational points.
//!
//! Points over F_{q^i} are enumerated by iterating x and solving the
//! additive equation y^q + y = x^{q0}(x^q + x) with precomputed GF(2)-linear
//! algebra, so enumeration costs O(q^i) field operations instead of
//! O(q^{2i}) naive pair scanning.

use serde::Serialize;
use thiserror::Error;

use crate::gf2m::{Embedding, FieldElement, FieldSpec};
use crate::semigroup::curve_semigroup;

/// Full-enumeration / counting budget: q^i must not exceed 2^32.
pub const EXT_BUDGET_BITS: u32 = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("invalid parameters s={s}, h={h}: need s >= 3, h >= 1 and 2h < s (2h >= s gives a reducible or birationally equivalent curve)")]
    InvalidParams { s: u32, h: u32 },
    #[error("extension degree {ext} exceeds budget: q^i = 2^{bits} > 2^32")]
    BudgetExceeded { ext: u32, bits: u32 },
    #[error("zero scaling constant in beta automorphism")]
    ZeroScaling,
}

/// Derived constants of the curve family member (s, h).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    pub s: u32,
    pub h: u32,
    pub q: u64,
    pub q0: u64,
    pub qbar: u64,
    pub n1: u64,
    pub genus: u64,
}

pub fn params_make(s: u32, h: u32) -> Result<CurveParams, CurveError> {
    if s < 3 || h < 1 || 2 * h >= s {
        return Err(CurveError::InvalidParams { s, h });
    }
    let q = 1u64 << s;
    let q0 = 1u64 << h;
    let qbar = 1u64 << (s - h);
    let n1 = 1u64 << (s - 2 * h);
    let genus = qbar * (q - 1) / 2;
    Ok(CurveParams { s, h, q, q0, qbar, n1, genus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSet {
    pub ext: u32,
    pub points: Vec<AffinePoint>,
    /// N_i: affine points plus the place at infinity
    pub count_with_infinity: u64,
}

/// Automorphisms of the function field acting on affine points.
/// Constants live in the base field F_q.
#[derive(Debug, Clone, Copy)]
pub enum Automorphism {
    /// x -> x + b, y -> y + b^{q0} x + c
    Alpha { b: FieldElement, c: FieldElement },
    /// x -> d x, y -> d^{q0+1} y, d != 0
    Beta { d: FieldElement },
    /// x -> x, y -> y + a
    Delta { a: FieldElement },
}

/// Solver for y^q + y = c over the ambient field, as a GF(2)-linear system.
struct AdditiveSolver {
    m: u32,
    /// transform rows: reduced matrix = transform * original
    transform: Vec<u64>,
    /// pivot column of echelon row i, for i < rank
    pivot_cols: Vec<u32>,
    kernel: Vec<u64>,
}

impl AdditiveSolver {
    fn new(field: &FieldSpec, s: u32) -> Self {
        let m = field.m();
        // columns: image of basis vector e_j under y -> y^q + y
        let mut rows = vec![0u64; m as usize];
        for j in 0..m {
            let e = field.el(1u64 << j).unwrap();
            let im = e.frob(s) + e;
            let c = im.coords();
            for i in 0..m {
                if (c >> i) & 1 == 1 {
                    rows[i as usize] |= 1 << j;
                }
            }
        }
        let mut transform: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
        let mut rank = 0usize;
        let mut pivot_cols = Vec::new();
        for col in 0..m {
            let Some(r) = (rank..m as usize).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, r);
            transform.swap(rank, r);
            for i in 0..m as usize {
                if i != rank && (rows[i] >> col) & 1 == 1 {
                    rows[i] ^= rows[rank];
                    transform[i] ^= transform[rank];
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        // kernel basis from free columns
        let mut kernel = Vec::new();
        let pivots: std::collections::HashSet<u32> = pivot_cols.iter().copied().collect();
        for f in 0..m {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = 1u64 << f;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                if (rows[i] >> f) & 1 == 1 {
                    v |= 1 << pc;
                }
            }
            kernel.push(v);
        }
        AdditiveSolver { m, transform, pivot_cols, kernel }
    }

    fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    fn solvable(&self, c: u64) -> bool {
        for i in self.rank()..self.m as usize {
            if (self.transform[i] & c).count_ones() & 1 == 1 {
                return false;
            }
        }
        true
    }

    /// All coordinate vectors y with L(y) = c, sorted; empty if unsolvable.
    fn solve(&self, c: u64) -> Vec<u64> {
        if !self.solvable(c) {
            return Vec::new();
        }
        let mut part = 0u64;
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            if (self.transform[i] & c).count_ones() & 1 == 1 {
                part |= 1 << pc;
            }
        }
        let mut sols = Vec::with_capacity(1 << self.kernel.len());
        for mask in 0u64..(1 << self.kernel.len()) {
            let mut v = part;
            for (k, &kv) in self.kernel.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    v ^= kv;
                }
            }
            sols.push(v);
        }
        sols.sort_unstable();
        sols
    }
}

/// The curve together with a fixed evaluation field F_{q^i}.
pub struct CurveField {
    pub params: CurveParams,
    pub ext: u32,
    /// GF(2^{s*ext}), the field of F_{q^i}-rational coordinates
    pub field: FieldSpec,
    /// GF(2^s), where automorphism constants and the set U live
    pub base: FieldSpec,
    base_embedding: Embedding,
    solver: AdditiveSolver,
}

impl CurveField {
    pub fn new(params: CurveParams, ext: u32) -> Result<Self, CurveError> {
        assert!(ext >= 1);
        let bits = params.s * ext;
        if bits > EXT_BUDGET_BITS {
            return Err(CurveError::BudgetExceeded { ext, bits });
        }
        let field = FieldSpec::new(bits).expect("bits <= 32");
        let base = FieldSpec::new(params.s).expect("s <= 32");
        let base_embedding = Embedding::new(base, field).expect("s divides s*ext");
        let solver = AdditiveSolver::new(&field, params.s);
        Ok(CurveField { params, ext, field, base, base_embedding, solver })
    }

    pub fn embed_base(&self, a: FieldElement) -> FieldElement {
        self.base_embedding.apply(a)
    }

    fn pow_q(&self, a: FieldElement) -> FieldElement {
        a.frob(self.params.s)
    }

    /// x^{q0} (x^q + x), the right-hand side of the Artin-Schreier equation.
    pub fn curve_rhs(&self, x: FieldElement) -> FieldElement {
        x.frob(self.params.h).mul(self.pow_q(x) + x)
    }

    pub fn on_curve(&self, p: &AffinePoint) -> bool {
        self.curve_rhs(p.x) == self.pow_q(p.y) + p.y
    }

    /// v = y^qbar + x^{qbar+1}
    pub fn eval_v(&self, p: &AffinePoint) -> FieldElement {
        p.y.frob(self.params.s - self.params.h) + p.x.frob(self.params.s - self.params.h).mul(p.x)
    }

    /// w = y^qbar x^{n1-1} + v^qbar
    pub fn eval_w(&self, p: &AffinePoint) -> FieldElement {
        let v = self.eval_v(p);
        p.y.frob(self.params.s - self.params.h).mul(p.x.pow(self.params.n1 - 1))
            + v.frob(self.params.s - self.params.h)
    }

    /// All y in the ambient field with y^q + y = c.
    pub fn solve_additive(&self, c: FieldElement) -> Vec<FieldElement> {
        assert_eq!(c.spec(), self.field);
        self.solver
            .solve(c.coords())
            .into_iter()
            .map(|v| self.field.el(v).unwrap())
            .collect()
    }

    /// All points with the given x-coordinate; size 0 or q.
    pub fn fiber(&self, a: FieldElement) -> Vec<AffinePoint> {
        self.solve_additive(self.curve_rhs(a))
            .into_iter()
            .map(|y| AffinePoint { x: a, y })
            .collect()
    }

    /// Streams affine points in canonical order (x coords, then y coords).
    pub fn stream_points(&self, mut f: impl FnMut(AffinePoint)) {
        for xc in 0..(1u64 << self.field.m()) {
            let x = self.field.el(xc).unwrap();
            for p in self.fiber(x) {
                f(p);
            }
        }
    }

    pub fn points(&self) -> PointSet {
        let mut points = Vec::new();
        self.stream_points(|p| points.push(p));
        let count_with_infinity = points.len() as u64 + 1;
        PointSet { ext: self.ext, points, count_with_infinity }
    }

    /// N_i without materializing points; every solvable fiber has q points.
    pub fn count_points(&self) -> u64 {
        let mut solvable = 0u64;
        for xc in 0..(1u64 << self.field.m()) {
            let x = self.field.el(xc).unwrap();
            if self.solver.solvable(self.curve_rhs(x).coords()) {
                solvable += 1;
            }
        }
        solvable * self.params.q + 1
    }

    pub fn apply_automorphism(
        &self,
        auto: &Automorphism,
        p: &AffinePoint,
    ) -> Result<AffinePoint, CurveError> {
        let q0 = self.params.q0;
        match auto {
            Automorphism::Alpha { b, c } => {
                let b = self.embed_base(*b);
                let c = self.embed_base(*c);
                Ok(AffinePoint {
                    x: p.x + b,
                    y: p.y + b.pow(q0).mul(p.x) + c,
                })
            }
            Automorphism::Beta { d } => {
                if d.is_zero() {
                    return Err(CurveError::ZeroScaling);
                }
                let d = self.embed_base(*d);
                Ok(AffinePoint {
                    x: d.mul(p.x),
                    y: d.pow(q0 + 1).mul(p.y),
                })
            }
            Automorphism::Delta { a } => {
                let a = self.embed_base(*a);
                Ok(AffinePoint { x: p.x, y: p.y + a })
            }
        }
    }
}

/// Pole order at P_infinity of x^a y^b v^c w^d, from the valuations
/// v(x) = -q, v(y) = -(q+q0), v(v) = -(q+qbar), v(w) = -(q(n1-1)+qbar+1).
pub fn pole_order(a: u64, b: u64, c: u64, d: u64, params: &CurveParams) -> u64 {
    let (q, q0, qbar, n1) = (params.q, params.q0, params.qbar, params.n1);
    a * q + b * (q + q0) + c * (q + qbar) + d * (q * (n1 - 1) + qbar + 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct CastleReport {
    pub params: CurveParams,
    pub ext: u32,
    pub n_points: u64,
    pub multiplicity: u64,
    /// C1: the Weierstrass semigroup is symmetric
    pub symmetric: bool,
    /// C2: |X(F)| = |F| * m(H) + 1 over the evaluation field
    pub c2_holds: bool,
    pub castle: bool,
    /// N_1 = q * rho_1 + 1, the Lewittes bound met with equality
    pub lewittes_optimal: bool,
}

/// Checks the Castle conditions over F_{q^ext} by direct enumeration.
pub fn castle_check(params: &CurveParams, ext: u32) -> Result<CastleReport, CurveError> {
    let cf = CurveField::new(*params, ext)?;
    let n_points = cf.count_points();
    let sg = curve_semigroup(params);
    let symmetric = sg.is_symmetric();
    let field_size = 1u64 << (params.s * ext);
    let c2_holds = n_points == field_size * sg.multiplicity() + 1;
    let lewittes_optimal = ext == 1 && n_points == params.q * sg.rho(1) + 1;
    Ok(CastleReport {
        params: *params,
        ext,
        n_points,
        multiplicity: sg.multiplicity(),
        symmetric,
        c2_holds,
        castle: symmetric && c2_holds,
        lewittes_optimal,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub a: String,
    pub size: u64,
    pub all_on_curve: bool,
    pub all_base_rational: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakCastleReport {
    pub params: CurveParams,
    pub ext: u32,
    /// pole divisor degree of the witness function f = x
    pub pole_order: u64,
    pub expected_fiber_size: u64,
    pub fibers: Vec<FiberReport>,
    pub symmetric: bool,
    pub witness_holds: bool,
}

/// Exhibits f = x and U = F_q for the weak-Castle condition over F_{q^ext}:
/// every a in U has exactly q preimages, all rational over the base field.
pub fn weak_castle_witness(params: &CurveParams, ext: u32) -> Result<WeakCastleReport, CurveError> {
    let cf = CurveField::new(*params, ext)?;
    let sg = curve_semigroup(params);
    let mut fibers = Vec::with_capacity(params.q as usize);
    let mut witness_holds = true;
    for a in cf.base.elements() {
        let ax = cf.embed_base(a);
        let pts = cf.fiber(ax);
        let all_on_curve = pts.iter().all(|p| cf.on_curve(p));
        // preimages of base-field values lie in X(F_q): both coordinates
        // are fixed by the q-power Frobenius
        let all_base_rational = pts
            .iter()
            .all(|p| p.x.frob(params.s) == p.x && p.y.frob(params.s) == p.y);
        let ok = pts.len() as u64 == params.q && all_on_curve && all_base_rational;
        witness_holds &= ok;
        fibers.push(FiberReport {
            a: a.hex(),
            size: pts.len() as u64,
            all_on_curve,
            all_base_rational,
        });
    }
    let symmetric = sg.is_symmetric();
    Ok(WeakCastleReport {
        params: *params,
        ext,
        pole_order: params.q,
        expected_fiber_size: params.q,
        fibers,
        symmetric,
        witness_holds: witness_holds && symmetric,
    })
}
