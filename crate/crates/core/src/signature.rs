//! Branch signatures and their Riemann-Hurwitz arithmetic, all in exact
//! rational numbers.
//!
//! A signature `(g' | m_1, ..., m_r)` records the genus of a quotient curve
//! and the branching orders of the cover over it. The two quantities
//!
//! ```text
//! theta(m) = -2 + sum(1 - 1/m_i)        alpha(m) = 2 / theta(m)
//! ```
//!
//! drive the whole search: a signature can occur for a genus-0 quotient only
//! if `theta > 0`, `alpha` is a positive integer equal to the group order
//! divided by `g - 1`, and every period divides `alpha`. That cuts the
//! infinitely many conceivable signatures down to a short explicit list.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::SignatureError;

pub type Rational = Ratio<i64>;

/// `(g' | m_1, ..., m_r)` with `g'` the quotient genus and nondecreasing
/// periods `m_i >= 2`. An empty period list (unbranched cover) is only
/// meaningful over genus 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchSignature {
    base_genus: u8,
    periods: Vec<u32>,
}

impl BranchSignature {
    pub fn new(base_genus: u8, mut periods: Vec<u32>) -> Result<Self, SignatureError> {
        if base_genus > 1 {
            return Err(SignatureError::BadSignature(format!(
                "quotient genus {base_genus} out of range (0 or 1)"
            )));
        }
        if base_genus == 0 && periods.is_empty() {
            return Err(SignatureError::BadSignature(
                "a genus-0 signature needs at least one period".into(),
            ));
        }
        if periods.iter().any(|&m| m < 2) {
            return Err(SignatureError::BadSignature("periods must be >= 2".into()));
        }
        periods.sort_unstable();
        Ok(BranchSignature { base_genus, periods })
    }

    pub fn genus0(periods: Vec<u32>) -> Result<Self, SignatureError> {
        BranchSignature::new(0, periods)
    }

    pub fn genus1(periods: Vec<u32>) -> Result<Self, SignatureError> {
        BranchSignature::new(1, periods)
    }

    pub fn base_genus(&self) -> u8 {
        self.base_genus
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn num_periods(&self) -> usize {
        self.periods.len()
    }

    /// Periods in exponent form, e.g. `2^2,4^2` or `2,4,12`.
    pub fn exponent_form(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.periods.len() {
            let m = self.periods[i];
            let mut k = 1;
            while i + k < self.periods.len() && self.periods[i + k] == m {
                k += 1;
            }
            if k == 1 {
                parts.push(m.to_string());
            } else {
                parts.push(format!("{m}^{k}"));
            }
            i += k;
        }
        parts.join(",")
    }
}

impl fmt::Display for BranchSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.base_genus, self.exponent_form())
    }
}

/// `theta(m) = -2 + sum(1 - 1/m_i)`, exact.
pub fn theta(periods: &[u32]) -> Rational {
    let mut acc = Rational::from_integer(-2);
    for &m in periods {
        acc += Rational::from_integer(1) - Ratio::new(1, m as i64);
    }
    acc
}

/// `alpha(m) = 2 / theta(m)`; only hyperbolic signatures (theta > 0) have
/// one.
pub fn alpha(periods: &[u32]) -> Result<Rational, SignatureError> {
    let th = theta(periods);
    if !th.is_positive() {
        return Err(SignatureError::NonHyperbolic(th.to_string()));
    }
    Ok(Rational::from_integer(2) / th)
}

/// Genus of the covering curve from the Riemann-Hurwitz relation:
/// `g = 1 + |G| (2g' - 2 + sum(1 - 1/m_i)) / 2`.
pub fn rh_genus(sig: &BranchSignature, group_order: u64) -> Result<u32, SignatureError> {
    let mut excess = Rational::from_integer(2 * sig.base_genus as i64 - 2);
    for &m in sig.periods() {
        excess += Rational::from_integer(1) - Ratio::new(1, m as i64);
    }
    let g = Rational::from_integer(1) + Rational::from_integer(group_order as i64) * excess / 2;
    if !g.is_integer() || g.is_negative() {
        return Err(SignatureError::NonIntegralGenus(g.to_string()));
    }
    Ok(g.to_integer() as u32)
}

/// `chi = (g_C - 1)(g_F - 1) / |G|` and `K^2 = 8 chi` for the quotient
/// surface `(C x F)/G`.
pub fn surface_invariants(
    g_c: u32,
    g_f: u32,
    group_order: u64,
) -> Result<(i64, i64), SignatureError> {
    let num = (g_c as i64 - 1) * (g_f as i64 - 1);
    let order = group_order as i64;
    if order == 0 || num % order != 0 {
        return Err(SignatureError::NonIntegralInvariant {
            gc: g_c as i64,
            gf: g_f as i64,
            order,
        });
    }
    let chi = num / order;
    Ok((chi, 8 * chi))
}

/// A hyperbolic genus-0 signature whose `alpha` is a positive integer
/// divisible by every period — the only ones a quotient `F -> F/G = P^1`
/// branched in `m` can have when `|G| = alpha (g - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleTuple {
    pub periods: Vec<u32>,
    pub alpha: u32,
}

impl fmt::Display for AdmissibleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = BranchSignature { base_genus: 0, periods: self.periods.clone() };
        write!(f, "({})_{}", sig.exponent_form(), self.alpha)
    }
}

/// All admissible tuples with `alpha <= alpha_cap`, sorted by
/// `(r, -alpha, periods)` — fewest branch points first, then largest group.
///
/// For each candidate `alpha` the periods must be divisors of `alpha` with
/// `sum(1 - 1/m_i)` exactly `2 + 2/alpha`, so the search is a small exact
/// subset-sum over the divisor list.
pub fn enumerate_admissible_tuples(alpha_cap: u32) -> Vec<AdmissibleTuple> {
    let mut out: Vec<AdmissibleTuple> = Vec::new();
    for a in 2..=alpha_cap {
        let divisors: Vec<u32> = (2..=a).filter(|d| a % d == 0).collect();
        let target = Rational::from_integer(2) + Ratio::new(2, a as i64);
        let mut stack: Vec<u32> = Vec::new();
        dfs(&divisors, 0, target, &mut stack, &mut |periods| {
            out.push(AdmissibleTuple { periods: periods.to_vec(), alpha: a });
        });
    }
    out.sort_by(|x, y| {
        (x.periods.len(), std::cmp::Reverse(x.alpha), &x.periods)
            .cmp(&(y.periods.len(), std::cmp::Reverse(y.alpha), &y.periods))
    });
    out
}

fn dfs(
    divisors: &[u32],
    from: usize,
    remaining: Rational,
    stack: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if remaining.is_zero() {
        emit(stack);
        return;
    }
    for (k, &m) in divisors.iter().enumerate().skip(from) {
        let term = Rational::from_integer(1) - Ratio::new(1, m as i64);
        if term > remaining {
            // Divisors ascend, so every later term overshoots too.
            break;
        }
        stack.push(m);
        dfs(divisors, k, remaining - term, stack, emit);
        stack.pop();
    }
}
