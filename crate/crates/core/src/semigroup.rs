//! Numerical semigroups: membership, gaps, Apéry sets, the Feng-Rao
//! function and the order bound.
//!
//! Membership is decided by a boolean DP table up to the conductor; beyond
//! the conductor every integer is a member, so the table never needs to be
//! extended. The Feng-Rao function counts ordered pairs of nongaps.

use serde::Serialize;
use thiserror::Error;

use crate::curve::CurveParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators have gcd {0} != 1, not a numerical semigroup")]
    GcdNotOne(u64),
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),
}

#[derive(Debug, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    genus: u64,
    conductor: u64,
    multiplicity: u64,
    gaps: Vec<u64>,
    /// sorted members strictly below the conductor
    #[serde(skip)]
    small_members: Vec<u64>,
    /// suffix minima of nu up to the stabilization index, filled on demand
    #[serde(skip)]
    order_bound_cache: std::sync::OnceLock<Vec<u64>>,
}

/// Ap(S, s): for each residue class mod s, the least member of S in it.
#[derive(Debug, Clone, Serialize)]
pub struct AperySet {
    pub base: u64,
    pub elements: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let multiplicity = generators[0];

        // DP table, grown until a run of `multiplicity` consecutive members
        // appears; past such a run every integer is a member.
        let mut table = vec![false; 1];
        table[0] = true;
        let mut run = 1usize; // current run of consecutive members ending at the last index
        let mut n = 0usize;
        while (run as u64) < multiplicity {
            n += 1;
            if table.len() <= n {
                table.resize(n + 1, false);
            }
            let member = generators
                .iter()
                .any(|&g| n as u64 >= g && table[n - g as usize]);
            table[n] = member;
            run = if member { run + 1 } else { 0 };
        }
        let first_of_run = n + 1 - run;
        let conductor = first_of_run as u64;
        let gaps: Vec<u64> = (0..first_of_run)
            .filter(|&i| !table[i])
            .map(|i| i as u64)
            .collect();
        let small_members: Vec<u64> = (0..first_of_run)
            .filter(|&i| table[i])
            .map(|i| i as u64)
            .collect();
        let genus = gaps.len() as u64;
        Ok(NumericalSemigroup {
            generators,
            genus,
            conductor,
            multiplicity,
            gaps,
            small_members,
            order_bound_cache: std::sync::OnceLock::new(),
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.small_members.binary_search(&n).is_ok()
    }

    /// i-th nongap, rho_0 = 0 < rho_1 < ...
    pub fn rho(&self, i: u64) -> u64 {
        if (i as usize) < self.small_members.len() {
            self.small_members[i as usize]
        } else {
            // past the conductor rho_i = i + genus
            i + self.genus
        }
    }

    /// Inverse of [`rho`]; errors on gaps.
    pub fn rho_index(&self, n: u64) -> Result<u64, SemigroupError> {
        if n >= self.conductor {
            return Ok(n - self.genus);
        }
        self.small_members
            .binary_search(&n)
            .map(|i| i as u64)
            .map_err(|_| SemigroupError::NotAMember(n))
    }

    /// Largest nongap <= n. n must be >= 0; rho_0 = 0 always qualifies.
    pub fn floor_nongap(&self, n: u64) -> u64 {
        if n >= self.conductor {
            return n;
        }
        match self.small_members.binary_search(&n) {
            Ok(i) => self.small_members[i],
            Err(i) => self.small_members[i - 1], // i >= 1 since 0 is a member
        }
    }

    pub fn apery_set(&self, s: u64) -> Result<AperySet, SemigroupError> {
        if s == 0 || !self.contains(s) {
            return Err(SemigroupError::NotAMember(s));
        }
        let mut elements = vec![u64::MAX; s as usize];
        // least member in each residue class; all of them are < c + s
        let mut found = 0u64;
        let mut n = 0u64;
        while found < s {
            if self.contains(n) {
                let r = (n % s) as usize;
                if elements[r] == u64::MAX {
                    elements[r] = n;
                    found += 1;
                }
            }
            n += 1;
        }
        elements.sort_unstable();
        Ok(AperySet { base: s, elements })
    }

    /// c(S) = 2 g(S); cross-checked against the gap/nongap mirror condition.
    pub fn is_symmetric(&self) -> bool {
        let by_conductor = self.conductor == 2 * self.genus;
        let mut by_mirror = true;
        if self.genus > 0 {
            let top = 2 * self.genus - 1;
            for x in 0..=top {
                if self.contains(x) == self.contains(top - x) {
                    by_mirror = false;
                    break;
                }
            }
        }
        assert_eq!(by_conductor, by_mirror, "symmetry criteria disagree");
        by_conductor
    }

    /// nu_l = #{ (i,j) : rho_i + rho_j = rho_{l+1} }, ordered pairs.
    pub fn feng_rao_nu(&self, l: u64) -> u64 {
        let target = self.rho(l + 1);
        let mut count = 0;
        for m in 0..=target {
            if self.contains(m) && self.contains(target - m) {
                count += 1;
            }
        }
        count
    }

    /// d_ORD(C_l) = min { nu_m : m >= l }. Once rho_{m+1} >= 2 c(S) the
    /// sequence nu_m = rho_{m+1} - 2g + 1 is strictly increasing, which
    /// bounds the scan; suffix minima are cached across calls.
    pub fn order_bound(&self, l: u64) -> u64 {
        let cache = self.order_bound_cache.get_or_init(|| {
            // smallest index with rho(stop_idx + 1) >= 2c
            let stop_idx = (2 * self.conductor - self.genus).saturating_sub(1) as usize;
            let mut suffix = vec![0u64; stop_idx + 1];
            suffix[stop_idx] = self.rho(stop_idx as u64 + 1) - 2 * self.genus + 1;
            for m in (0..stop_idx).rev() {
                suffix[m] = self.feng_rao_nu(m as u64).min(suffix[m + 1]);
            }
            suffix
        });
        if (l as usize) < cache.len() {
            cache[l as usize]
        } else {
            // stabilized regime: the minimum is attained at m = l
            self.rho(l + 1) - 2 * self.genus + 1
        }
    }
}

impl AperySet {
    pub fn max(&self) -> u64 {
        *self.elements.last().unwrap()
    }
}

/// The Weierstrass semigroup at the infinite place of the curve:
/// <q, q+q0, q+qbar, q(n1-1)+qbar+1>.
pub fn curve_semigroup(params: &CurveParams) -> NumericalSemigroup {
    let (q, q0, qbar, n1) = (params.q, params.q0, params.qbar, params.n1);
    NumericalSemigroup::from_generators(&[q, q + q0, q + qbar, q * (n1 - 1) + qbar + 1])
        .expect("curve generators contain q and q+1-coprime combinations")
}

/// The explicit Apéry-style representative set for the curve semigroup:
/// { t1(q+q0) + t2(q+qbar) + t3(q(n1-1)+qbar+1) } over the bounded index box.
pub fn curve_apery_box(params: &CurveParams) -> Vec<u64> {
    let (q, q0, qbar, n1) = (params.q, params.q0, params.qbar, params.n1);
    let g4 = q * (n1 - 1) + qbar + 1;
    let mut out = Vec::with_capacity(q as usize);
    for t1 in 0..n1 {
        for t2 in 0..q0 {
            for t3 in 0..q0 {
                out.push(t1 * (q + q0) + t2 * (q + qbar) + t3 * g4);
            }
        }
    }
    out.sort_unstable();
    out
}
