//! Quantum code parameters from the classical Castle codes: the general
//! t-point construction and the CSS construction with order-bound distance
//! estimates.

use serde::Serialize;
use thiserror::Error;

use crate::curve::CurveParams;
use crate::semigroup::curve_semigroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuantumError {
    #[error("need a > 2g - 2 = {limit}, got a = {a}")]
    ATooSmall { a: u64, limit: u64 },
    #[error("need a < b, got a = {a}, b = {b}")]
    NotIncreasing { a: u64, b: u64 },
    #[error("need b < q^2 = {n}, got b = {b}")]
    BTooLarge { b: u64, n: u64 },
    #[error("indices must be >= 1")]
    ZeroIndex,
    #[error("rho_{index} = {rho} is not below the code length {n}")]
    RhoOutOfRange { index: u64, rho: u64, n: u64 },
    #[error("dual parameter {0} out of range")]
    DualOutOfRange(i64),
    #[error("quantum Singleton bound violated: 2*{d} + {k} > {n} + 2 (upstream bug)")]
    SingletonViolated { n: u64, k: u64, d: u64 },
    #[error("empty parameter range")]
    EmptyRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    CssOrderBound,
    TPoint,
}

/// An [[n, k, >= d_lower]]_q parameter set; d_lower is always a lower
/// bound, never an exact distance claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumCodeParams {
    pub n: u64,
    pub k: u64,
    pub d_lower: u64,
    pub construction: Construction,
    pub a: u64,
    pub b: u64,
}

/// [[q^2, b-a, d]] with d >= min{ q^2 - b, a - (2g - 2) }, valid for
/// 2g - 2 < a < b < q^2.
pub fn t_point_params(params: &CurveParams, a: u64, b: u64) -> Result<QuantumCodeParams, QuantumError> {
    let n = params.q * params.q;
    let two_g_minus_2 = 2 * params.genus - 2;
    if a <= two_g_minus_2 {
        return Err(QuantumError::ATooSmall { a, limit: two_g_minus_2 });
    }
    if a >= b {
        return Err(QuantumError::NotIncreasing { a, b });
    }
    if b >= n {
        return Err(QuantumError::BTooLarge { b, n });
    }
    let d_lower = (n - b).min(a - two_g_minus_2);
    Ok(QuantumCodeParams {
        n,
        k: b - a,
        d_lower,
        construction: Construction::TPoint,
        a,
        b,
    })
}

/// CSS derivation with the intermediate order-bound terms exposed.
#[derive(Debug, Clone, Serialize)]
pub struct CssDetail {
    pub result: QuantumCodeParams,
    pub rho_a: u64,
    pub rho_ab: u64,
    pub rho_dual: u64,
    /// largest nongap <= rho_dual, the effective dual parameter
    pub rho_dual_floor: u64,
    pub d_ord_primary: u64,
    pub d_ord_dual: u64,
}

/// CSS construction on the nested pair C^perp(D, rho_{a+b} Q) inside
/// C^perp(D, rho_a Q): an [[q^2, b, d]] code with
/// d >= min{ d_ORD(C_a), d_ORD(C^perp(D, rho_{a+b}^perp Q)) }.
pub fn css_params(params: &CurveParams, a_idx: u64, b_gap: u64) -> Result<CssDetail, QuantumError> {
    css_params_on(&curve_semigroup(params), params, a_idx, b_gap)
}

/// Same as `css_params`, with the semigroup supplied by the caller so a
/// sweep can reuse it (and its cached order-bound values).
fn css_params_on(
    sg: &crate::semigroup::NumericalSemigroup,
    params: &CurveParams,
    a_idx: u64,
    b_gap: u64,
) -> Result<CssDetail, QuantumError> {
    if a_idx == 0 || b_gap == 0 {
        return Err(QuantumError::ZeroIndex);
    }
    let n = params.q * params.q;
    let rho_a = sg.rho(a_idx);
    let rho_ab = sg.rho(a_idx + b_gap);
    if rho_a >= n {
        return Err(QuantumError::RhoOutOfRange { index: a_idx, rho: rho_a, n });
    }
    if rho_ab >= n {
        return Err(QuantumError::RhoOutOfRange { index: a_idx + b_gap, rho: rho_ab, n });
    }
    // the dual parameter may exceed N (then the second term of the bound
    // degenerates to the Goppa designed distance N - rho_{a+b}); only a
    // negative value is invalid
    let dual = n as i64 + 2 * params.genus as i64 - 2 - rho_ab as i64;
    if dual < 0 {
        return Err(QuantumError::DualOutOfRange(dual));
    }
    // the dual parameter may land on a gap; the code is unchanged when we
    // drop to the largest nongap below it
    let rho_dual_floor = sg.floor_nongap(dual as u64);
    let dual_idx = sg.rho_index(rho_dual_floor).expect("floor_nongap returns a member");
    let d_ord_primary = sg.order_bound(a_idx);
    let d_ord_dual = sg.order_bound(dual_idx);
    let d_lower = d_ord_primary.min(d_ord_dual);
    Ok(CssDetail {
        result: QuantumCodeParams {
            n,
            k: b_gap,
            d_lower,
            construction: Construction::CssOrderBound,
            a: a_idx,
            b: b_gap,
        },
        rho_a,
        rho_ab,
        rho_dual: dual as u64,
        rho_dual_floor,
        d_ord_primary,
        d_ord_dual,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SingletonReport {
    pub n: u64,
    pub k: u64,
    pub d_lower: u64,
    /// upper bound on the true Singleton defect (true delta_Q <= this)
    pub delta_q_upper: u64,
    pub relative_defect_upper: f64,
}

pub fn singleton_report(p: &QuantumCodeParams) -> Result<SingletonReport, QuantumError> {
    if 2 * p.d_lower + p.k > p.n + 2 {
        return Err(QuantumError::SingletonViolated { n: p.n, k: p.k, d: p.d_lower });
    }
    let delta_q_upper = p.n + 2 - p.k - 2 * p.d_lower;
    Ok(SingletonReport {
        n: p.n,
        k: p.k,
        d_lower: p.d_lower,
        delta_q_upper,
        relative_defect_upper: delta_q_upper as f64 / p.n as f64,
    })
}

/// Parameter sweep over the full valid grid (or a sub-range), deduplicated
/// and sorted by (k, -d_lower).
pub fn quantum_table(
    params: &CurveParams,
    construction: Construction,
    a_range: Option<(u64, u64)>,
    b_range: Option<(u64, u64)>,
) -> Result<Vec<QuantumCodeParams>, QuantumError> {
    let n = params.q * params.q;
    let mut rows = Vec::new();
    match construction {
        Construction::TPoint => {
            let lo = 2 * params.genus - 1;
            let (a0, a1) = a_range.unwrap_or((lo, n - 2));
            for a in a0..=a1 {
                let (b0, b1) = b_range.unwrap_or((a + 1, n - 1));
                for b in b0.max(a + 1)..=b1.min(n - 1) {
                    if let Ok(p) = t_point_params(params, a, b) {
                        rows.push(p);
                    }
                }
            }
        }
        Construction::CssOrderBound => {
            let sg = curve_semigroup(params);
            let max_idx = sg.rho_index(sg.floor_nongap(n - 1)).unwrap();
            let (a0, a1) = a_range.unwrap_or((1, max_idx.saturating_sub(1)));
            for a_idx in a0.max(1)..=a1 {
                let (b0, b1) = b_range.unwrap_or((1, max_idx.saturating_sub(a_idx)));
                for b_gap in b0.max(1)..=b1 {
                    if let Ok(d) = css_params_on(&sg, params, a_idx, b_gap) {
                        rows.push(d.result);
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Err(QuantumError::EmptyRange);
    }
    rows.sort_by(|x, y| (x.k, std::cmp::Reverse(x.d_lower), x.a, x.b)
        .cmp(&(y.k, std::cmp::Reverse(y.d_lower), y.a, y.b)));
    rows.dedup();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agcode::gen_matrix;
    use crate::curve::{params_make, CurveField};

    fn p8() -> CurveParams {
        params_make(3, 1).unwrap()
    }

    #[test]
    fn t_point_examples() {
        let p = p8();
        let r = t_point_params(&p, 40, 50).unwrap();
        assert_eq!((r.n, r.k, r.d_lower), (64, 10, 14));
        let r = t_point_params(&p, 27, 28).unwrap();
        assert_eq!((r.k, r.d_lower), (1, 1));
        assert_eq!(
            t_point_params(&p, 26, 30),
            Err(QuantumError::ATooSmall { a: 26, limit: 26 })
        );
        assert!(t_point_params(&p, 30, 30).is_err());
        assert!(t_point_params(&p, 30, 64).is_err());
    }

    #[test]
    fn t_point_monotonicity() {
        let p = p8();
        // d nonincreasing in b for fixed a
        for a in [30u64, 40, 50] {
            let mut prev = u64::MAX;
            for b in (a + 1)..64 {
                let d = t_point_params(&p, a, b).unwrap().d_lower;
                assert!(d <= prev);
                prev = d;
            }
        }
        // d nondecreasing in a for fixed b
        for b in [40u64, 55, 63] {
            let mut prev = 0;
            for a in 27..b {
                let d = t_point_params(&p, a, b).unwrap().d_lower;
                assert!(d >= prev);
                prev = d;
            }
        }
    }

    #[test]
    fn css_q8_basic() {
        let p = p8();
        let d = css_params(&p, 1, 1).unwrap();
        assert_eq!(d.result.n, 64);
        assert_eq!(d.result.k, 1);
        assert_eq!(d.rho_a, 8);
        assert_eq!(d.rho_ab, 10);
        assert_eq!(d.rho_dual, 64 + 28 - 2 - 10);
        let sg = curve_semigroup(&p);
        assert_eq!(d.d_ord_primary, sg.order_bound(1));
        assert_eq!(d.result.d_lower, d.d_ord_primary.min(d.d_ord_dual));
        assert!(css_params(&p, 0, 1).is_err());
    }

    #[test]
    fn css_dimension_consistency() {
        // k = number of nongaps in (rho_a, rho_{a+b}]
        let p = p8();
        let sg = curve_semigroup(&p);
        for a in 1..10u64 {
            for b in 1..10u64 {
                if let Ok(d) = css_params(&p, a, b) {
                    let count = (d.rho_a + 1..=d.rho_ab).filter(|&x| sg.contains(x)).count() as u64;
                    assert_eq!(d.result.k, count);
                }
            }
        }
    }

    #[test]
    fn css_classical_nesting() {
        // row space of G(rho_a) inside row space of G(rho_{a+b})
        let p = p8();
        let cf = CurveField::new(p, 1).unwrap();
        for (a, b) in [(1u64, 1u64), (2, 3), (5, 4), (10, 8)] {
            let d = css_params(&p, a, b).unwrap();
            let inner = gen_matrix(&cf, d.rho_a).unwrap();
            let outer = gen_matrix(&cf, d.rho_ab).unwrap();
            assert!(outer.matrix.row_space_contains(&inner.matrix));
        }
    }

    #[test]
    fn singleton_examples() {
        let rep = singleton_report(&QuantumCodeParams {
            n: 64,
            k: 10,
            d_lower: 14,
            construction: Construction::TPoint,
            a: 40,
            b: 50,
        })
        .unwrap();
        assert_eq!(rep.delta_q_upper, 28);
        assert!((rep.relative_defect_upper - 0.4375).abs() < 1e-12);

        // trivial code: k = n, d = 1
        let rep = singleton_report(&QuantumCodeParams {
            n: 64,
            k: 64,
            d_lower: 1,
            construction: Construction::TPoint,
            a: 0,
            b: 0,
        })
        .unwrap();
        assert_eq!(rep.delta_q_upper, 0);

        assert!(singleton_report(&QuantumCodeParams {
            n: 4,
            k: 4,
            d_lower: 3,
            construction: Construction::TPoint,
            a: 0,
            b: 0,
        })
        .is_err());
    }

    #[test]
    fn table_q8_tpoint() {
        let p = p8();
        let rows = quantum_table(&p, Construction::TPoint, None, None).unwrap();
        // integer grid 26 < a < b < 64
        assert_eq!(rows.len(), 666);
        for r in &rows {
            assert!(singleton_report(r).is_ok());
        }
        let best = rows.iter().filter(|r| r.k == 10).map(|r| r.d_lower).max().unwrap();
        assert_eq!(best, 14);
    }

    #[test]
    fn table_css_q8_all_singleton_ok() {
        let p = p8();
        let rows = quantum_table(&p, Construction::CssOrderBound, None, None).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert!(singleton_report(r).is_ok(), "row {:?}", r);
        }
    }

    #[test]
    fn empty_range_rejected() {
        let p = p8();
        assert_eq!(
            quantum_table(&p, Construction::TPoint, Some((1, 2)), None),
            Err(QuantumError::EmptyRange)
        );
    }
}
