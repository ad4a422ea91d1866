//! Integer structure of the coupling polynomials.
//!
//! Expanding the shell polynomial `prod_{j<N} (xi - s_j)` over the squared
//! generators turns each `xi^{N-m}` coefficient into an integer multivariate
//! polynomial that must be divisible, coefficient by coefficient, by
//! `C(N, m)` for the couplings `c_m^2` to stay integral. This module expands
//! exactly (big integers, no floating point), checks that divisibility with
//! a witness on failure, and searches for the lexicographically smallest
//! weight tuple satisfying it.
//!
//! The search prunes hard:
//!
//! - a candidate prefix `(w_1..w_t)` is feasible only if the expansion with
//!   the remaining shells frozen at `s_t` passes the divisibility check
//!   (setting the unused generators to zero leaves coefficients unchanged,
//!   so this is a necessary condition);
//! - at position `i`, the pure-power monomial `v_i^m` of the `xi^{N-m}`
//!   coefficient equals `C(N-i, m) w_i^m`, which forces a computable integer
//!   divisor of `w_i`; only multiples of it are tried.
//!
//! Depth-first traversal in ascending candidate order with backtracking
//! therefore returns the lexicographic minimum without assuming per-position
//! greediness is sufficient (it is not: the N = 7 tuple is not monotone).

use crate::poly::binomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Generator names used for printed formulas, one per squared variable.
pub const GENERATOR_NAMES: [&str; 10] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
];

/// Coupling names `a^2, b^2, ...` following the traditional lettering that
/// skips `e`; indices past the table fall back to `c{m}^2`.
pub fn coupling_name(m: usize) -> String {
    const LETTERS: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "t"];
    LETTERS
        .get(m - 1)
        .map(|l| format!("{l}^2"))
        .unwrap_or_else(|| format!("c{m}^2"))
}

#[derive(Debug, Error)]
pub enum DiophantineError {
    #[error("barrier count N={0} outside the supported search range 1..=10")]
    UnsupportedN(usize),
    #[error("no valid weight tuple for N={n} with every weight <= {bound}")]
    BoundExhausted { n: usize, bound: u64 },
    #[error("weights {weights:?} break integrality: {witness}")]
    NotIntegral {
        weights: Vec<u64>,
        witness: Witness,
    },
}

/// Sparse integer polynomial in the squared generators. Keys are exponent
/// vectors over `v_i = p_i^2`; the map order makes iteration deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: i64) -> Self {
        let mut p = Self::zero(nvars);
        if value != 0 {
            p.terms.insert(vec![0; nvars], BigInt::from(value));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Vec<u8>, coeff: BigInt) {
        debug_assert_eq!(mono.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (mono, coeff) in &other.terms {
            self.add_term(mono.clone(), coeff.clone());
        }
    }

    /// Multiply by a linear form `sum_k c_k v_k` given as (var, coeff) pairs.
    pub fn mul_linear(&self, form: &[(usize, BigInt)]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (mono, coeff) in &self.terms {
            for (var, c) in form {
                let mut m = mono.clone();
                m[*var] += 1;
                out.add_term(m, coeff * c);
            }
        }
        out
    }

    pub fn negate(&mut self) {
        for coeff in self.terms.values_mut() {
            *coeff = -coeff.clone();
        }
    }

    /// Terms in printing order: descending lexicographic exponent vectors,
    /// which lists `alpha` powers first.
    pub fn ordered_terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Divide every coefficient by `d`, or report the first offender in
    /// printing order.
    pub fn div_exact(&self, d: u128) -> Result<MPoly, (Vec<u8>, BigInt)> {
        let div = BigInt::from(d);
        let mut out = MPoly::zero(self.nvars);
        for (mono, coeff) in self.ordered_terms() {
            let (q, r) = coeff.div_rem(&div);
            if !r.is_zero() {
                return Err((mono.clone(), coeff.clone()));
            }
            out.terms.insert(mono.clone(), q);
        }
        Ok(out)
    }

    /// Render with the given variable names; exponents double because the
    /// variables are squared generators (`v_i = p_i^2`).
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (mono, coeff)) in self.ordered_terms().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || mono.iter().all(|&e| e == 0) {
                factors.push(mag.to_string());
            }
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    factors.push(format!("{}^{}", names[i], 2 * e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Expand `prod_j (xi - shell_j)` where each shell is a linear form in the
/// squared generators. Returns the coefficient polynomial of each power of
/// `xi`, ascending, length `shells.len() + 1` (the top one is the constant 1).
pub fn expand_shells(nvars: usize, shells: &[Vec<(usize, u64)>]) -> Vec<MPoly> {
    let mut cur = vec![MPoly::constant(nvars, 1)];
    for shell in shells {
        let form: Vec<(usize, BigInt)> = shell
            .iter()
            .map(|&(v, c)| (v, BigInt::from(c)))
            .collect();
        let mut next = vec![MPoly::zero(nvars); cur.len() + 1];
        for (d, poly) in cur.iter().enumerate() {
            next[d + 1].add_assign(poly);
            let mut prod = poly.mul_linear(&form);
            prod.negate();
            next[d].add_assign(&prod);
        }
        cur = next;
    }
    cur
}

/// Cumulative shell ladder for the standard family: `s_j = sum_{i<=j} w_i v_i`
/// with `w_0 = 1`. When `t + 1 < n` the remaining shells repeat `s_t`, which
/// is the partial-assignment expansion used for prefix pruning.
fn ladder_shells(n: usize, weights_prefix: &[u64]) -> Vec<Vec<(usize, u64)>> {
    let t = weights_prefix.len();
    let mut shells = Vec::with_capacity(n);
    let mut cur: Vec<(usize, u64)> = vec![(0, 1)];
    shells.push(cur.clone());
    for (i, &w) in weights_prefix.iter().enumerate() {
        cur.push((i + 1, w));
        shells.push(cur.clone());
    }
    while shells.len() < n {
        shells.push(shells[t].clone());
    }
    shells
}

/// Full exact expansion of the shell polynomial for a complete weight tuple.
pub fn expand_factored(n: usize, weights: &[u64]) -> Result<Vec<MPoly>, DiophantineError> {
    if n == 0 || n > 10 {
        return Err(DiophantineError::UnsupportedN(n));
    }
    assert_eq!(
        weights.len(),
        n - 1,
        "N={n} takes {} weights, got {}",
        n - 1,
        weights.len()
    );
    Ok(expand_shells(n, &ladder_shells(n, weights)))
}

/// Offending monomial of a failed divisibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Coupling index m whose divisor C(N, m) fails.
    pub m: usize,
    /// Exponent vector over the squared generators.
    pub monomial: Vec<u8>,
    /// The integer coefficient as it appears in the expansion.
    pub coefficient: BigInt,
    /// The divisor C(N, m) that does not divide it.
    pub divisor: u128,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = if self.monomial.iter().all(|&e| e == 0) {
            "1".to_string()
        } else {
            self.monomial
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| format!("{}^{}", GENERATOR_NAMES[i], 2 * e))
                .collect::<Vec<_>>()
                .join("*")
        };
        write!(
            f,
            "monomial {} of the xi^(N-{}) coefficient has coefficient {} \
             not divisible by C(N,{}) = {}",
            mono, self.m, self.coefficient, self.m, self.divisor
        )
    }
}

/// A weight tuple with its verdict.
#[derive(Debug, Clone)]
pub struct WeightCandidate {
    pub n: usize,
    pub weights: Vec<u64>,
    pub valid: bool,
    pub witness: Option<Witness>,
}

fn check_expansion(n: usize, coeffs: &[MPoly]) -> Option<Witness> {
    for m in 1..n {
        let divisor = binomial(n as u64, m as u64);
        let poly = &coeffs[n - m];
        for (mono, coeff) in poly.ordered_terms() {
            if !(coeff % BigInt::from(divisor)).is_zero() {
                return Some(Witness {
                    m,
                    monomial: mono.clone(),
                    coefficient: coeff.clone(),
                    divisor,
                });
            }
        }
    }
    None
}

/// Verify the divisibility constraint for a complete weight tuple.
pub fn check_divisibility(n: usize, weights: &[u64]) -> Result<WeightCandidate, DiophantineError> {
    let coeffs = expand_factored(n, weights)?;
    let witness = check_expansion(n, &coeffs);
    Ok(WeightCandidate {
        n,
        weights: weights.to_vec(),
        valid: witness.is_none(),
        witness,
    })
}

/// Smallest divisor every admissible `w_i` must carry, from the pure-power
/// monomials `v_i^m`: `C(N,m) | C(N-i,m) w_i^m` for all m.
fn required_base(n: usize, i: usize) -> u64 {
    let mut base: u64 = 1;
    for p in 2..=n as u64 {
        // trial-division primality is plenty at this size
        if (2..p).any(|q| p % q == 0) {
            continue;
        }
        let mut need = 0u32;
        for m in 1..n {
            let top = binomial(n as u64, m as u64);
            let bot = binomial((n - i) as u64, m as u64);
            if bot == 0 {
                continue; // no pure-power monomial of this order
            }
            let vp = |mut v: u128| {
                let mut e = 0u32;
                while v > 0 && v.is_multiple_of(p as u128) {
                    v /= p as u128;
                    e += 1;
                }
                e
            };
            let deficit = vp(top).saturating_sub(vp(bot));
            need = need.max(deficit.div_ceil(m as u32));
        }
        base *= p.pow(need);
    }
    base
}

fn prefix_valid(n: usize, prefix: &[u64]) -> bool {
    let coeffs = expand_shells(prefix.len() + 1, &ladder_shells(n, prefix));
    check_expansion(n, &coeffs).is_none()
}

/// Lexicographically smallest weight tuple keeping every coupling integral,
/// with every weight at most `bound`. Deterministic; depth-first with
/// backtracking over the pruned candidate sets.
pub fn minimal_weights(n: usize, bound: u64) -> Result<WeightCandidate, DiophantineError> {
    if n == 0 || n > 10 {
        return Err(DiophantineError::UnsupportedN(n));
    }
    if n == 1 {
        return Ok(WeightCandidate {
            n,
            weights: vec![],
            valid: true,
            witness: None,
        });
    }
    let bases: Vec<u64> = (1..n).map(|i| required_base(n, i)).collect();
    let mut chosen: Vec<u64> = Vec::with_capacity(n - 1);
    if dfs(n, bound, &bases, &mut chosen) {
        Ok(WeightCandidate {
            n,
            weights: chosen,
            valid: true,
            witness: None,
        })
    } else {
        Err(DiophantineError::BoundExhausted { n, bound })
    }
}

fn dfs(n: usize, bound: u64, bases: &[u64], chosen: &mut Vec<u64>) -> bool {
    let pos = chosen.len(); // next weight index is pos + 1, base index pos
    let base = bases[pos];
    let mut w = base;
    while w <= bound {
        chosen.push(w);
        if prefix_valid(n, chosen) && (chosen.len() == n - 1 || dfs(n, bound, bases, chosen)) {
            return true;
        }
        chosen.pop();
        w += base;
    }
    false
}

/// The coupling polynomials `c_m^2` as integer polynomials in the squared
/// generators: each `xi^{N-m}` coefficient divided by `(-1)^m C(N, m)`.
pub fn coupling_formulas(n: usize, weights: &[u64]) -> Result<Vec<MPoly>, DiophantineError> {
    let coeffs = expand_factored(n, weights)?;
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let divisor = binomial(n as u64, m as u64);
        let mut poly = coeffs[n - m].clone();
        if m % 2 == 1 {
            poly.negate();
        }
        match poly.div_exact(divisor) {
            Ok(q) => out.push(q),
            Err((monomial, coefficient)) => {
                // restore the sign the coefficient has in the raw expansion
                let coefficient = if m % 2 == 1 { -coefficient } else { coefficient };
                return Err(DiophantineError::NotIntegral {
                    weights: weights.to_vec(),
                    witness: Witness {
                        m,
                        monomial,
                        coefficient,
                        divisor,
                    },
                });
            }
        }
    }
    Ok(out)
}

/// Reference tuples the search is expected to reproduce for small N.
pub fn reference_weights(n: usize) -> Option<&'static [u64]> {
    crate::potential::REFERENCE_WEIGHTS.get(n - 1).copied()
}
