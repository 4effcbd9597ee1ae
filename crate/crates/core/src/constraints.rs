//! Machine-checkable necessary conditions on any integer whose abundancy
//! index would equal 12/7 (a "friend of 14" candidate), evaluated on an
//! explicit factorization so candidates far beyond machine words can be
//! screened.
//!
//! Every predicate is a *necessary* condition: a true friend of 14 passes
//! all of them, so a single failure disqualifies a candidate, while passing
//! everything proves nothing. Failures carry a human-readable witness
//! naming the offending structure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{sigma_of_factorization, sigma_prime_power, two_adic_valuation, Factorization};
use crate::error::Error;

/// Identifiers for the screening predicates, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintId {
    /// The candidate is odd.
    Odd,
    /// The candidate is not a perfect square.
    NonSquare,
    /// 7 divides the candidate.
    SevenDivides,
    /// The candidate exceeds 14.
    GreaterThan14,
    /// 12 divides sigma of the candidate.
    SigmaDiv12,
    /// sigma of the candidate is divisible by 4 but not 8.
    SigmaTwoAdic,
    /// The exponent of 7 is even.
    SevenEvenExp,
    /// Every prime congruent to 7 mod 8 appears to an even power.
    Mod8PrimeEvenExp,
    /// No prime appears to a power congruent to 7 mod 8.
    NoExp7Mod8,
    /// Exactly one or two primes appear to an odd power.
    OddExpCount,
    /// If 3 divides the candidate, it divides exactly once.
    ThreeExact,
    /// 3 and 5 do not both divide the candidate.
    ThreeFiveExclusion,
    /// At least 4 distinct primes (8 when coprime to 15).
    OmegaLowerBound,
    /// Every prime power factor is small against the candidate.
    PrimeSizeBound,
}

/// All predicates in canonical evaluation/report order.
pub const ALL_CONSTRAINTS: [ConstraintId; 14] = [
    ConstraintId::Odd,
    ConstraintId::NonSquare,
    ConstraintId::SevenDivides,
    ConstraintId::GreaterThan14,
    ConstraintId::SigmaDiv12,
    ConstraintId::SigmaTwoAdic,
    ConstraintId::SevenEvenExp,
    ConstraintId::Mod8PrimeEvenExp,
    ConstraintId::NoExp7Mod8,
    ConstraintId::OddExpCount,
    ConstraintId::ThreeExact,
    ConstraintId::ThreeFiveExclusion,
    ConstraintId::OmegaLowerBound,
    ConstraintId::PrimeSizeBound,
];

impl ConstraintId {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintId::Odd => "ODD",
            ConstraintId::NonSquare => "NON_SQUARE",
            ConstraintId::SevenDivides => "SEVEN_DIVIDES",
            ConstraintId::GreaterThan14 => "GREATER_THAN_14",
            ConstraintId::SigmaDiv12 => "SIGMA_DIV_12",
            ConstraintId::SigmaTwoAdic => "SIGMA_TWO_ADIC",
            ConstraintId::SevenEvenExp => "SEVEN_EVEN_EXP",
            ConstraintId::Mod8PrimeEvenExp => "MOD8_PRIME_EVEN_EXP",
            ConstraintId::NoExp7Mod8 => "NO_EXP_7_MOD_8",
            ConstraintId::OddExpCount => "ODD_EXP_COUNT",
            ConstraintId::ThreeExact => "THREE_EXACT",
            ConstraintId::ThreeFiveExclusion => "THREE_FIVE_EXCLUSION",
            ConstraintId::OmegaLowerBound => "OMEGA_LOWER_BOUND",
            ConstraintId::PrimeSizeBound => "PRIME_SIZE_BOUND",
        }
    }

    /// Short human description for tables and help text.
    pub fn description(self) -> &'static str {
        match self {
            ConstraintId::Odd => "candidate is odd",
            ConstraintId::NonSquare => "candidate is not a perfect square",
            ConstraintId::SevenDivides => "7 divides the candidate",
            ConstraintId::GreaterThan14 => "candidate is greater than 14",
            ConstraintId::SigmaDiv12 => "12 divides sigma(candidate)",
            ConstraintId::SigmaTwoAdic => "sigma(candidate) is divisible by 4 but not 8",
            ConstraintId::SevenEvenExp => "the exponent of 7 is even",
            ConstraintId::Mod8PrimeEvenExp => "primes congruent to 7 mod 8 have even exponents",
            ConstraintId::NoExp7Mod8 => "no exponent is congruent to 7 mod 8",
            ConstraintId::OddExpCount => "exactly one or two primes have odd exponents",
            ConstraintId::ThreeExact => "if 3 divides the candidate, 3^1 exactly divides it",
            ConstraintId::ThreeFiveExclusion => "3 and 5 do not both divide the candidate",
            ConstraintId::OmegaLowerBound => {
                "at least 4 distinct primes (8 when coprime to 15)"
            }
            ConstraintId::PrimeSizeBound => {
                "7*p^a*sigma(p^a) <= 12*candidate for every prime power p^a"
            }
        }
    }
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstraintId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_CONSTRAINTS
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown constraint id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one predicate: on failure, `witness` explains which structure
/// in the candidate violates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintVerdict {
    pub id: ConstraintId,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

/// Outcome of the full screening pipeline over one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub candidate: Factorization,
    pub verdicts: Vec<ConstraintVerdict>,
    pub overall: Verdict,
}

impl CheckReport {
    /// Ids of the predicates the candidate failed, in evaluation order.
    pub fn failing(&self) -> Vec<ConstraintId> {
        self.verdicts
            .iter()
            .filter(|v| !v.verdict.passed())
            .map(|v| v.id)
            .collect()
    }

    /// Stable JSON document (`check14/v1`). All integers are decimal
    /// strings so arbitrary-size candidates survive every JSON parser.
    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .candidate
            .entries()
            .iter()
            .map(|(p, a)| json!({ "prime": p.to_string(), "exponent": a }))
            .collect();
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| match &v.witness {
                Some(w) => json!({ "id": v.id.as_str(), "verdict": v.verdict.to_string(), "witness": w }),
                None => json!({ "id": v.id.as_str(), "verdict": v.verdict.to_string() }),
            })
            .collect();
        json!({
            "schema": "check14/v1",
            "candidate": {
                "value": self.candidate.value().to_string(),
                "factors": factors,
            },
            "verdicts": verdicts,
            "overall": self.overall.to_string(),
        })
    }
}

/// Evaluates a single predicate against a candidate factorization.
pub fn check_constraint(f: &Factorization, id: ConstraintId) -> ConstraintVerdict {
    let sigma = sigma_of_factorization(f);
    evaluate(f, &sigma, id)
}

/// Runs the whole screening pipeline, computing sigma once.
pub fn check_friend_of_14(f: &Factorization) -> CheckReport {
    let sigma = sigma_of_factorization(f);
    let verdicts: Vec<ConstraintVerdict> =
        ALL_CONSTRAINTS.iter().map(|&id| evaluate(f, &sigma, id)).collect();
    let overall = if verdicts.iter().all(|v| v.verdict.passed()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    CheckReport { candidate: f.clone(), verdicts, overall }
}

fn evaluate(f: &Factorization, sigma: &BigUint, id: ConstraintId) -> ConstraintVerdict {
    let witness = violation(f, sigma, id);
    ConstraintVerdict {
        id,
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        witness,
    }
}

/// `None` when the predicate holds; otherwise a description of the offense.
fn violation(f: &Factorization, sigma: &BigUint, id: ConstraintId) -> Option<String> {
    match id {
        ConstraintId::Odd => f
            .exponent_of(2)
            .map(|a| format!("even: 2^{a} exactly divides candidate")),
        ConstraintId::NonSquare => f
            .entries()
            .iter()
            .all(|(_, a)| a % 2 == 0)
            .then(|| "perfect square: every prime exponent is even".to_string()),
        ConstraintId::SevenDivides => f
            .exponent_of(7)
            .is_none()
            .then(|| "7 does not divide candidate".to_string()),
        ConstraintId::GreaterThan14 => (f.value() <= &BigUint::from(14u32))
            .then(|| format!("candidate {} is not greater than 14", f.value())),
        ConstraintId::SigmaDiv12 => (!(sigma % 12u32).is_zero())
            .then(|| format!("sigma(candidate) = {sigma} is not divisible by 12")),
        ConstraintId::SigmaTwoAdic => {
            let v = two_adic_valuation(sigma);
            (v != 2).then(|| format!("v2(sigma(candidate)) = {v}, expected exactly 2"))
        }
        ConstraintId::SevenEvenExp => match f.exponent_of(7) {
            Some(a) if a % 2 == 1 => {
                Some(format!("7^{a} exactly divides candidate, exponent is odd"))
            }
            _ => None,
        },
        ConstraintId::Mod8PrimeEvenExp => f
            .entries()
            .iter()
            .find(|(p, a)| p % 8u32 == BigUint::from(7u32) && a % 2 == 1)
            .map(|(p, a)| format!("prime {p} \u{2261} 7 (mod 8) has odd exponent {a}")),
        ConstraintId::NoExp7Mod8 => f
            .entries()
            .iter()
            .find(|(_, a)| a % 8 == 7)
            .map(|(p, a)| format!("prime {p} has exponent {a} \u{2261} 7 (mod 8)")),
        ConstraintId::OddExpCount => {
            let k = f.entries().iter().filter(|(_, a)| a % 2 == 1).count();
            (!(1..=2).contains(&k))
                .then(|| format!("{k} primes have odd exponent, expected 1 or 2"))
        }
        ConstraintId::ThreeExact => match f.exponent_of(3) {
            Some(a) if a >= 2 => Some(format!(
                "3^{a} exactly divides candidate, expected exponent exactly 1"
            )),
            _ => None,
        },
        ConstraintId::ThreeFiveExclusion => (f.exponent_of(3).is_some()
            && f.exponent_of(5).is_some())
        .then(|| "3 and 5 both divide candidate".to_string()),
        ConstraintId::OmegaLowerBound => {
            let k = f.omega();
            let divisible_by_3_or_5 = f.exponent_of(3).is_some() || f.exponent_of(5).is_some();
            let required = if divisible_by_3_or_5 { 4 } else { 8 };
            (k < required).then(|| {
                if divisible_by_3_or_5 {
                    format!(
                        "\u{03c9}(candidate) = {k}, required at least 4 because 3 or 5 divides candidate"
                    )
                } else {
                    format!(
                        "\u{03c9}(candidate) = {k}, required at least 8 because candidate is coprime to 15"
                    )
                }
            })
        }
        ConstraintId::PrimeSizeBound => {
            let twelve_f = f.value() * 12u32;
            for (p, a) in f.entries() {
                let weak = p * p * 7u32;
                if weak > twelve_f {
                    return Some(format!(
                        "prime {p}: 7*p^2 = {weak} exceeds 12*candidate = {twelve_f}"
                    ));
                }
                let power = p.pow(*a);
                let strong = &power * sigma_prime_power(p, *a) * 7u32;
                if strong > twelve_f {
                    return Some(format!(
                        "prime power {p}^{a}: 7*p^a*sigma(p^a) = {strong} exceeds 12*candidate = {twelve_f}"
                    ));
                }
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize_u64;
    use std::str::FromStr;

    fn failing_names(n: u64) -> Vec<&'static str> {
        check_friend_of_14(&factorize_u64(n))
            .failing()
            .iter()
            .map(|id| id.as_str())
            .collect()
    }

    #[test]
    fn fourteen_itself_fails_exactly_the_expected_predicates() {
        assert_eq!(
            failing_names(14),
            [
                "ODD",
                "GREATER_THAN_14",
                "SIGMA_TWO_ADIC",
                "SEVEN_EVEN_EXP",
                "MOD8_PRIME_EVEN_EXP",
                "OMEGA_LOWER_BOUND",
                "PRIME_SIZE_BOUND",
            ]
        );
    }

    #[test]
    fn perfect_28_fails_exactly_the_expected_predicates() {
        assert_eq!(
            failing_names(28),
            [
                "ODD",
                "SIGMA_DIV_12",
                "SIGMA_TWO_ADIC",
                "SEVEN_EVEN_EXP",
                "MOD8_PRIME_EVEN_EXP",
                "OMEGA_LOWER_BOUND",
                "PRIME_SIZE_BOUND",
            ]
        );
    }

    #[test]
    fn odd_multiples_of_49_first_rejections() {
        assert_eq!(
            failing_names(735),
            ["SIGMA_TWO_ADIC", "THREE_FIVE_EXCLUSION", "OMEGA_LOWER_BOUND", "PRIME_SIZE_BOUND"]
        );
        assert_eq!(
            failing_names(5733),
            ["SIGMA_DIV_12", "SIGMA_TWO_ADIC", "THREE_EXACT", "OMEGA_LOWER_BOUND"]
        );
    }

    #[test]
    fn survivor_passes_every_predicate() {
        // 3 * 7^2 * 11^2 * 13^2 = 3006003 clears the whole pipeline.
        let report = check_friend_of_14(&factorize_u64(3_006_003));
        assert_eq!(report.overall, Verdict::Pass);
        assert!(report.failing().is_empty());
        assert_eq!(report.verdicts.len(), 14);
        assert!(report.verdicts.iter().all(|v| v.witness.is_none()));
    }

    #[test]
    fn witness_strings_are_stable() {
        let report = check_friend_of_14(&factorize_u64(14));
        let witness = |id: ConstraintId| -> &str {
            report
                .verdicts
                .iter()
                .find(|v| v.id == id)
                .and_then(|v| v.witness.as_deref())
                .unwrap()
        };
        assert_eq!(witness(ConstraintId::Odd), "even: 2^1 exactly divides candidate");
        assert_eq!(witness(ConstraintId::GreaterThan14), "candidate 14 is not greater than 14");
        assert_eq!(
            witness(ConstraintId::SigmaTwoAdic),
            "v2(sigma(candidate)) = 3, expected exactly 2"
        );
        assert_eq!(
            witness(ConstraintId::SevenEvenExp),
            "7^1 exactly divides candidate, exponent is odd"
        );
        assert_eq!(
            witness(ConstraintId::Mod8PrimeEvenExp),
            "prime 7 \u{2261} 7 (mod 8) has odd exponent 1"
        );
        assert_eq!(
            witness(ConstraintId::OmegaLowerBound),
            "\u{03c9}(candidate) = 2, required at least 8 because candidate is coprime to 15"
        );
        assert_eq!(
            witness(ConstraintId::PrimeSizeBound),
            "prime 7: 7*p^2 = 343 exceeds 12*candidate = 168"
        );

        let report = check_friend_of_14(&factorize_u64(5733));
        let three = report
            .verdicts
            .iter()
            .find(|v| v.id == ConstraintId::ThreeExact)
            .unwrap();
        assert_eq!(
            three.witness.as_deref(),
            Some("3^2 exactly divides candidate, expected exponent exactly 1")
        );
    }

    #[test]
    fn single_constraint_matches_full_pipeline() {
        for n in [1u64, 14, 28, 735, 5733, 3_006_003, 44_100] {
            let f = factorize_u64(n);
            let report = check_friend_of_14(&f);
            for (i, &id) in ALL_CONSTRAINTS.iter().enumerate() {
                assert_eq!(check_constraint(&f, id), report.verdicts[i], "n = {n}, id = {id}");
            }
        }
    }

    #[test]
    fn square_candidate_fails_square_and_count_predicates() {
        // 44100 = (2*3*5*7)^2 is a perfect square with zero odd exponents.
        let report = check_friend_of_14(&factorize_u64(44_100));
        let failing = report.failing();
        assert!(failing.contains(&ConstraintId::NonSquare));
        assert!(failing.contains(&ConstraintId::OddExpCount));
        let count = report
            .verdicts
            .iter()
            .find(|v| v.id == ConstraintId::OddExpCount)
            .unwrap();
        assert_eq!(
            count.witness.as_deref(),
            Some("0 primes have odd exponent, expected 1 or 2")
        );
    }

    #[test]
    fn explicit_factorization_beyond_machine_words_is_screened() {
        // 3 * 7^2 * p^2 * q^2 for the ten-digit primes p = 10^9+7 and
        // q = 10^9+9: the value is near 1.5 * 10^38, far beyond u64, but the
        // pipeline only needs the factor list. sigma = 4 * 57 * odd * odd,
        // so the divisibility and 2-adic predicates hold, and every prime
        // power stays under the size bound: a genuine full-pipeline survivor.
        let f = Factorization::from_str("3*7^2*1000000007^2*1000000009^2").unwrap();
        let report = check_friend_of_14(&f);
        assert_eq!(report.overall, Verdict::Pass, "failing: {:?}", report.failing());
    }

    #[test]
    fn oversized_prime_power_fails_size_bound_beyond_machine_words() {
        // 7^2 * p^2 for p = 10^9+7 is ~4.9 * 10^19: the p^2 block dwarfs the
        // rest of the candidate, so 7*p^2*sigma(p^2) overshoots 12*candidate.
        let f = Factorization::from_str("7^2*1000000007^2").unwrap();
        let failing = check_friend_of_14(&f).failing();
        assert!(failing.contains(&ConstraintId::PrimeSizeBound));
        assert!(failing.contains(&ConstraintId::OmegaLowerBound));
    }

    #[test]
    fn json_document_shape() {
        let doc = check_friend_of_14(&factorize_u64(3_006_003)).to_json();
        assert_eq!(doc["schema"], "check14/v1");
        assert_eq!(doc["candidate"]["value"], "3006003");
        assert_eq!(doc["candidate"]["factors"][0]["prime"], "3");
        assert_eq!(doc["candidate"]["factors"][0]["exponent"], 1);
        assert_eq!(doc["candidate"]["factors"][3]["prime"], "13");
        assert_eq!(doc["verdicts"].as_array().unwrap().len(), 14);
        assert_eq!(doc["verdicts"][0]["id"], "ODD");
        assert_eq!(doc["verdicts"][0]["verdict"], "pass");
        assert!(doc["verdicts"][0].get("witness").is_none());
        assert_eq!(doc["overall"], "pass");

        let doc = check_friend_of_14(&factorize_u64(14)).to_json();
        assert_eq!(doc["overall"], "fail");
        assert_eq!(doc["verdicts"][0]["verdict"], "fail");
        assert_eq!(doc["verdicts"][0]["witness"], "even: 2^1 exactly divides candidate");
    }

    #[test]
    fn constraint_id_round_trips_through_strings() {
        for id in ALL_CONSTRAINTS {
            assert_eq!(ConstraintId::from_str(id.as_str()).unwrap(), id);
        }
        assert!(ConstraintId::from_str("NOT_A_CONSTRAINT").is_err());
    }

    #[test]
    fn candidate_one_is_rejected_not_crashed() {
        let report = check_friend_of_14(&Factorization::one());
        assert_eq!(report.overall, Verdict::Fail);
        assert!(report.failing().contains(&ConstraintId::NonSquare));
        assert!(report.failing().contains(&ConstraintId::SevenDivides));
        assert!(report.failing().contains(&ConstraintId::GreaterThan14));
    }
}
