//! Brute-force verification of the structural facts the rest of the crate
//! leans on, over bounded domains, using *independent* oracles: sigma here
//! is a direct divisor (or term-by-term) summation, never the closed-form
//! product the production code uses, so a bug in the fast path cannot hide
//! itself.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Identifiers for the verifiable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// sigma is multiplicative across coprime arguments.
    SigmaMultiplicative,
    /// Multiplying by any gamma >= 2 strictly raises the abundancy index.
    MultiplierRaisesIndex,
    /// Replacing primes by positionwise larger primes never raises the index.
    PrimeSubstitution,
    /// The index is strictly below the product of p/(p-1) over the support.
    SupportBound,
    /// Every friend of 14 in range is odd, above 14, and not a square.
    FriendOf14Screen,
    /// 8 divides sigma(p^a) for primes p = 7 (mod 8) and odd a.
    SigmaDivisibleBy8Mod8Primes,
    /// 8 divides sigma(p^a) for odd primes p and exponents a = 7 (mod 8).
    SigmaDivisibleBy8Exp7,
    /// 2 divides sigma(p^a) for odd primes p and odd exponents a.
    SigmaEvenOddExp,
    /// Prime powers are coprime to their sigma, hence solitary.
    PrimePowerCoprimality,
}

/// All verifiable statements, in report order.
pub const ALL_THEOREMS: [TheoremId; 9] = [
    TheoremId::SigmaMultiplicative,
    TheoremId::MultiplierRaisesIndex,
    TheoremId::PrimeSubstitution,
    TheoremId::SupportBound,
    TheoremId::FriendOf14Screen,
    TheoremId::SigmaDivisibleBy8Mod8Primes,
    TheoremId::SigmaDivisibleBy8Exp7,
    TheoremId::SigmaEvenOddExp,
    TheoremId::PrimePowerCoprimality,
];

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::SigmaMultiplicative => "L2.1",
            TheoremId::MultiplierRaisesIndex => "L2.2",
            TheoremId::PrimeSubstitution => "L2.4",
            TheoremId::SupportBound => "L2.5",
            TheoremId::FriendOf14Screen => "T3.1",
            TheoremId::SigmaDivisibleBy8Mod8Primes => "T3.2-core",
            TheoremId::SigmaDivisibleBy8Exp7 => "T3.4-core",
            TheoremId::SigmaEvenOddExp => "T3.5-core",
            TheoremId::PrimePowerCoprimality => "T3.10-core",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            TheoremId::SigmaMultiplicative => {
                "sigma(m*n) = sigma(m)*sigma(n) for coprime m, n"
            }
            TheoremId::MultiplierRaisesIndex => {
                "I(gamma*n) > I(n) for every multiplier gamma >= 2"
            }
            TheoremId::PrimeSubstitution => {
                "replacing primes by positionwise larger primes never raises I"
            }
            TheoremId::SupportBound => {
                "I(n) < product of p/(p-1) over the distinct primes of n"
            }
            TheoremId::FriendOf14Screen => {
                "every n with 7*sigma(n) = 12*n other than 14 is odd, > 14, and non-square"
            }
            TheoremId::SigmaDivisibleBy8Mod8Primes => {
                "8 | sigma(p^a) when p = 7 (mod 8) is prime and a is odd"
            }
            TheoremId::SigmaDivisibleBy8Exp7 => {
                "8 | sigma(p^a) when p is an odd prime and a = 7 (mod 8)"
            }
            TheoremId::SigmaEvenOddExp => {
                "2 | sigma(p^a) when p is an odd prime and a is odd"
            }
            TheoremId::PrimePowerCoprimality => "gcd(p^a, sigma(p^a)) = 1 for prime powers",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_THEOREMS
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = ALL_THEOREMS.iter().map(|id| id.as_str()).collect();
                Error::InvalidInput(format!(
                    "unknown theorem id {s:?}; known ids: {}",
                    known.join(", ")
                ))
            })
    }
}

/// Domain sizes for one verification run. Every statement reads the fields
/// it needs and ignores the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyBudget {
    /// Primes strictly below this bound enter prime-indexed statements.
    pub prime_bound: u64,
    /// Exponents strictly below this bound enter prime-power statements.
    pub exponent_bound: u32,
    /// Integer statements run over `n ..= n_bound` exhaustively.
    pub n_bound: u64,
    /// Multipliers `2 ..= gamma_bound` for the monotonicity statement.
    pub gamma_bound: u64,
    /// Number of random cases for the sampled statements.
    pub samples: u64,
    /// Seed for the sampled statements; fixed seed, fixed report.
    pub seed: u64,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        Self {
            prime_bound: 1000,
            exponent_bound: 20,
            n_bound: 10_000,
            gamma_bound: 50,
            samples: 10_000,
            seed: 20_260_814,
        }
    }
}

/// Hard caps keeping a verification run minutes, not days.
const MAX_PRIME_BOUND: u64 = 100_000;
const MAX_EXPONENT_BOUND: u32 = 64;
const MAX_N_BOUND: u64 = 1_000_000;
const MAX_GAMMA_BOUND: u64 = 1_000;
const MAX_SAMPLES: u64 = 1_000_000;
const MAX_N_TIMES_GAMMA: u64 = 50_000_000;
const MAX_SAMPLES_TIMES_N: u64 = 1_000_000_000;

/// Outcome of one verification run. `counterexamples == 0` with a nonzero
/// `cases_checked` is the expected "statement survived" report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    /// Human description of the domain actually enumerated.
    pub domain: String,
    pub cases_checked: u64,
    pub counterexamples: u64,
    /// The first violating case, rendered for humans, if any exist.
    pub first_counterexample: Option<String>,
}

fn validate(budget: &VerifyBudget, id: TheoremId) -> Result<()> {
    let too_big = |field: &str, got: u64, cap: u64| {
        Err(Error::BudgetTooLarge(format!("{field} = {got} exceeds the cap of {cap}")))
    };
    if budget.prime_bound > MAX_PRIME_BOUND {
        return too_big("prime_bound", budget.prime_bound, MAX_PRIME_BOUND);
    }
    if budget.exponent_bound > MAX_EXPONENT_BOUND {
        return too_big("exponent_bound", budget.exponent_bound as u64, MAX_EXPONENT_BOUND as u64);
    }
    if budget.n_bound > MAX_N_BOUND {
        return too_big("n_bound", budget.n_bound, MAX_N_BOUND);
    }
    if budget.gamma_bound > MAX_GAMMA_BOUND {
        return too_big("gamma_bound", budget.gamma_bound, MAX_GAMMA_BOUND);
    }
    if budget.samples > MAX_SAMPLES {
        return too_big("samples", budget.samples, MAX_SAMPLES);
    }
    if id == TheoremId::MultiplierRaisesIndex
        && budget.n_bound.saturating_mul(budget.gamma_bound) > MAX_N_TIMES_GAMMA
    {
        return Err(Error::BudgetTooLarge(format!(
            "n_bound * gamma_bound = {} exceeds the cap of {MAX_N_TIMES_GAMMA} for L2.2",
            budget.n_bound.saturating_mul(budget.gamma_bound)
        )));
    }
    if id == TheoremId::SigmaMultiplicative
        && budget.samples.saturating_mul(budget.n_bound) > MAX_SAMPLES_TIMES_N
    {
        return Err(Error::BudgetTooLarge(format!(
            "samples * n_bound = {} exceeds the cap of {MAX_SAMPLES_TIMES_N} for L2.1",
            budget.samples.saturating_mul(budget.n_bound)
        )));
    }
    Ok(())
}

/// Checks one statement by brute force over the budgeted domain.
pub fn verify_theorem(id: TheoremId, budget: &VerifyBudget) -> Result<VerificationReport> {
    validate(budget, id)?;
    Ok(match id {
        TheoremId::SigmaMultiplicative => verify_sigma_multiplicative(budget),
        TheoremId::MultiplierRaisesIndex => verify_multiplier_raises_index(budget),
        TheoremId::PrimeSubstitution => verify_prime_substitution(budget),
        TheoremId::SupportBound => verify_support_bound(budget),
        TheoremId::FriendOf14Screen => verify_friend_of_14_screen(budget),
        TheoremId::SigmaDivisibleBy8Mod8Primes => verify_mod8_prime_divisibility(budget),
        TheoremId::SigmaDivisibleBy8Exp7 => verify_exp7_divisibility(budget),
        TheoremId::SigmaEvenOddExp => verify_odd_exp_even_sigma(budget),
        TheoremId::PrimePowerCoprimality => verify_prime_power_coprimality(budget),
    })
}

// ---------------------------------------------------------------------------
// Independent oracles.

/// Direct divisor-pair summation; intentionally ignorant of factorization.
fn naive_sigma(n: u64) -> u128 {
    debug_assert!(n >= 1);
    let mut sum: u128 = 0;
    let root = n.sqrt();
    for d in 1..=root {
        if n.is_multiple_of(d) {
            sum += d as u128;
            let q = n / d;
            if q != d {
                sum += q as u128;
            }
        }
    }
    sum
}

/// `1 + p + p^2 + ... + p^a` term by term; no closed form.
fn sigma_power_by_summation(p: u64, a: u32) -> BigUint {
    let mut term = BigUint::from(1u32);
    let mut sum = BigUint::from(1u32);
    for _ in 0..a {
        term *= p;
        sum += &term;
    }
    sum
}

/// Plain sieve local to this module.
fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n.max(2)];
    let mut out = Vec::new();
    for p in 2..n {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        let mut m = p * p;
        while m < n {
            composite[m] = true;
            m += p;
        }
    }
    out
}

/// Distinct prime divisors by bare trial division.
fn distinct_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn report(
    theorem: TheoremId,
    domain: String,
    cases_checked: u64,
    failures: Vec<String>,
) -> VerificationReport {
    VerificationReport {
        theorem,
        domain,
        cases_checked,
        counterexamples: failures.len() as u64,
        first_counterexample: failures.into_iter().next(),
    }
}

// ---------------------------------------------------------------------------
// The statements.

fn verify_sigma_multiplicative(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::SigmaMultiplicative;
    let bound = budget.n_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut failures = Vec::new();
    let mut checked = 0u64;
    while checked < budget.samples {
        let m = rng.gen_range(1..=bound);
        let n = rng.gen_range(1..=bound);
        if num_integer::gcd(m, n) != 1 {
            continue;
        }
        checked += 1;
        if naive_sigma(m * n) != naive_sigma(m) * naive_sigma(n) {
            failures.push(format!("m = {m}, n = {n}"));
        }
    }
    report(
        id,
        format!("{} random coprime pairs (m, n) with m, n <= {bound}", budget.samples),
        checked,
        failures,
    )
}

fn verify_multiplier_raises_index(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::MultiplierRaisesIndex;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for n in 1..=budget.n_bound {
        let sigma_n = naive_sigma(n);
        for gamma in 2..=budget.gamma_bound {
            checked += 1;
            // I(gamma*n) > I(n)  <=>  sigma(gamma*n) * n > sigma(n) * gamma * n
            let lhs = naive_sigma(gamma * n) * n as u128;
            let rhs = sigma_n * (gamma * n) as u128;
            if lhs <= rhs {
                failures.push(format!("n = {n}, gamma = {gamma}"));
            }
        }
    }
    report(
        id,
        format!("all n <= {} against all gamma in 2..={}", budget.n_bound, budget.gamma_bound),
        checked,
        failures,
    )
}

fn verify_prime_substitution(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::PrimeSubstitution;
    // Substitute primes are drawn above the originals, so give them headroom.
    let pool = primes_below(budget.prime_bound * 2);
    let original_count = pool.iter().filter(|&&p| p < budget.prime_bound).count();
    if original_count == 0 {
        return report(id, format!("no primes below {}", budget.prime_bound), 0, Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut failures = Vec::new();
    let mut checked = 0u64;

    'cases: while checked < budget.samples {
        let k = rng.gen_range(1..=4usize);
        // k distinct original primes, ascending.
        let mut picks = std::collections::BTreeSet::new();
        for _ in 0..k {
            picks.insert(rng.gen_range(0..original_count));
        }
        let originals: Vec<u64> = picks.iter().map(|&i| pool[i]).collect();
        // Positionwise substitutes: q_i >= p_i, strictly increasing.
        let mut substitutes = Vec::with_capacity(originals.len());
        let mut floor_index = 0usize;
        for &p in &originals {
            let lo = pool.partition_point(|&q| q < p).max(floor_index);
            if lo >= pool.len() {
                continue 'cases;
            }
            let idx = rng.gen_range(lo..pool.len());
            substitutes.push(pool[idx]);
            floor_index = idx + 1;
        }
        let exponents: Vec<u32> = originals.iter().map(|_| rng.gen_range(1..=5u32)).collect();
        checked += 1;

        // I(prod p_i^a_i) >= I(prod q_i^a_i), compared exactly by
        // cross-multiplication of term-by-term sigma sums.
        let mut lhs_num = BigUint::from(1u32);
        let mut lhs_den = BigUint::from(1u32);
        let mut rhs_num = BigUint::from(1u32);
        let mut rhs_den = BigUint::from(1u32);
        for i in 0..originals.len() {
            lhs_num *= sigma_power_by_summation(originals[i], exponents[i]);
            lhs_den *= BigUint::from(originals[i]).pow(exponents[i]);
            rhs_num *= sigma_power_by_summation(substitutes[i], exponents[i]);
            rhs_den *= BigUint::from(substitutes[i]).pow(exponents[i]);
        }
        if lhs_num * rhs_den < rhs_num * lhs_den {
            failures.push(format!(
                "primes {originals:?} with exponents {exponents:?} vs substitutes {substitutes:?}"
            ));
        }
    }
    report(
        id,
        format!(
            "{} random positionwise substitutions over primes below {}",
            budget.samples, budget.prime_bound
        ),
        checked,
        failures,
    )
}

fn verify_support_bound(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::SupportBound;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for n in 2..=budget.n_bound {
        checked += 1;
        let mut prod_p: u128 = 1;
        let mut prod_p_minus_1: u128 = 1;
        for p in distinct_primes(n) {
            prod_p *= p as u128;
            prod_p_minus_1 *= (p - 1) as u128;
        }
        // I(n) < prod p/(p-1)  <=>  sigma(n) * prod(p-1) < n * prod(p)
        if naive_sigma(n) * prod_p_minus_1 >= n as u128 * prod_p {
            failures.push(format!("n = {n}"));
        }
    }
    report(id, format!("all n in 2..={}", budget.n_bound), checked, failures)
}

fn verify_friend_of_14_screen(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::FriendOf14Screen;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for n in 1..=budget.n_bound {
        checked += 1;
        if 7 * naive_sigma(n) == 12 * n as u128 && n != 14 {
            let root = n.sqrt();
            if n % 2 == 0 || root * root == n || n <= 14 {
                failures.push(format!("n = {n}"));
            }
        }
    }
    report(id, format!("all n in 1..={}", budget.n_bound), checked, failures)
}

fn verify_mod8_prime_divisibility(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::SigmaDivisibleBy8Mod8Primes;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for p in primes_below(budget.prime_bound) {
        if p % 8 != 7 {
            continue;
        }
        for a in (1..budget.exponent_bound).step_by(2) {
            checked += 1;
            if !(sigma_power_by_summation(p, a) % 8u32).is_zero() {
                failures.push(format!("p = {p}, a = {a}"));
            }
        }
    }
    report(
        id,
        format!(
            "primes p < {} with p \u{2261} 7 (mod 8), odd exponents a < {}",
            budget.prime_bound, budget.exponent_bound
        ),
        checked,
        failures,
    )
}

fn verify_exp7_divisibility(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::SigmaDivisibleBy8Exp7;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for p in primes_below(budget.prime_bound) {
        if p == 2 {
            continue;
        }
        for a in 1..budget.exponent_bound {
            if a % 8 != 7 {
                continue;
            }
            checked += 1;
            if !(sigma_power_by_summation(p, a) % 8u32).is_zero() {
                failures.push(format!("p = {p}, a = {a}"));
            }
        }
    }
    report(
        id,
        format!(
            "odd primes p < {}, exponents a < {} with a \u{2261} 7 (mod 8)",
            budget.prime_bound, budget.exponent_bound
        ),
        checked,
        failures,
    )
}

fn verify_odd_exp_even_sigma(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::SigmaEvenOddExp;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for p in primes_below(budget.prime_bound) {
        if p == 2 {
            continue;
        }
        for a in (1..budget.exponent_bound).step_by(2) {
            checked += 1;
            if !(sigma_power_by_summation(p, a) % 2u32).is_zero() {
                failures.push(format!("p = {p}, a = {a}"));
            }
        }
    }
    report(
        id,
        format!(
            "odd primes p < {}, odd exponents a < {}",
            budget.prime_bound, budget.exponent_bound
        ),
        checked,
        failures,
    )
}

fn verify_prime_power_coprimality(budget: &VerifyBudget) -> VerificationReport {
    let id = TheoremId::PrimePowerCoprimality;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for p in primes_below(budget.prime_bound) {
        for a in 1..budget.exponent_bound {
            checked += 1;
            let power = BigUint::from(p).pow(a);
            if !sigma_power_by_summation(p, a).gcd(&power).is_one() {
                failures.push(format!("p = {p}, a = {a}"));
            }
        }
    }
    report(
        id,
        format!("primes p < {}, exponents 1 <= a < {}", budget.prime_bound, budget.exponent_bound),
        checked,
        failures,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_budget() -> VerifyBudget {
        VerifyBudget {
            prime_bound: 200,
            exponent_bound: 12,
            n_bound: 500,
            gamma_bound: 8,
            samples: 300,
            seed: 7,
        }
    }

    #[test]
    fn every_statement_survives_a_small_domain() {
        for id in ALL_THEOREMS {
            let report = verify_theorem(id, &small_budget()).unwrap();
            assert_eq!(report.theorem, id);
            assert_eq!(report.counterexamples, 0, "{id} found {:?}", report.first_counterexample);
            assert_eq!(report.first_counterexample, None);
            assert!(report.cases_checked > 0, "{id} checked nothing");
            assert!(!report.domain.is_empty());
        }
    }

    #[test]
    fn sampled_statements_are_reproducible() {
        let a = verify_theorem(TheoremId::PrimeSubstitution, &small_budget()).unwrap();
        let b = verify_theorem(TheoremId::PrimeSubstitution, &small_budget()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn naive_sigma_matches_hand_values() {
        assert_eq!(naive_sigma(1), 1);
        assert_eq!(naive_sigma(14), 24);
        assert_eq!(naive_sigma(28), 56);
        assert_eq!(naive_sigma(5733), 10374);
        assert_eq!(naive_sigma(3_006_003), 5_549_292);
    }

    #[test]
    fn summation_sigma_matches_hand_values() {
        assert_eq!(sigma_power_by_summation(2, 5), BigUint::from(63u32));
        assert_eq!(sigma_power_by_summation(7, 2), BigUint::from(57u32));
        assert_eq!(sigma_power_by_summation(3, 1), BigUint::from(4u32));
    }

    #[test]
    fn oversized_budgets_are_refused_by_field() {
        let b = VerifyBudget { n_bound: MAX_N_BOUND + 1, ..Default::default() };
        match verify_theorem(TheoremId::SupportBound, &b) {
            Err(Error::BudgetTooLarge(msg)) => assert!(msg.contains("n_bound")),
            other => panic!("expected budget error, got {other:?}"),
        }
        let b = VerifyBudget { samples: MAX_SAMPLES + 1, ..Default::default() };
        assert!(matches!(
            verify_theorem(TheoremId::SigmaMultiplicative, &b),
            Err(Error::BudgetTooLarge(_))
        ));
        let b = VerifyBudget { n_bound: MAX_N_BOUND, gamma_bound: MAX_GAMMA_BOUND, ..Default::default() };
        assert!(matches!(
            verify_theorem(TheoremId::MultiplierRaisesIndex, &b),
            Err(Error::BudgetTooLarge(_))
        ));
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in ALL_THEOREMS {
            assert_eq!(TheoremId::from_str(id.as_str()).unwrap(), id);
        }
        assert!(TheoremId::from_str("L9.9").is_err());
    }

    #[test]
    fn default_budget_domains_mention_their_bounds() {
        let b = VerifyBudget::default();
        let r = verify_theorem(TheoremId::SigmaEvenOddExp, &b).unwrap();
        assert!(r.domain.contains("1000") && r.domain.contains("20"), "domain: {}", r.domain);
    }
}
