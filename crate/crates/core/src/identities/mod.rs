//! Verification harness: closed forms against path enumeration, bijections
//! against their contracts, each run producing a [`VerificationReport`].

mod algebraic;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::json;

pub use algebraic::{
    scan_nonnegativity, scan_unimodality, verify_ballot_expansion, verify_eq5,
    verify_fuerlinger_hofbauer, verify_macmahon, verify_q_rubenstein, verify_qballot_theorem,
    verify_rubenstein, verify_theorem_main, BallotTable, Grounding,
};
pub use report::{write_csv, Status, VerificationReport, Witness};

use report::{run, Check, Mode};

use crate::bijections::{trace, Bijection, BijectionTrace, Case};
use crate::error::{Error, Result};
use crate::paths::{enumerate, FamilySpec, LatticePath, Statistic};
use crate::qpoly::QPoly;

fn exponent_sum(counts: &BTreeMap<i64, u64>) -> QPoly {
    counts.iter().map(|(&e, &c)| QPoly::monomial(c, e)).sum()
}

/// `maj(p) = maj(reflect(p)) + n` for every `p` with `m` up steps, `n` down
/// steps and a final up step, over `m + n <= total_max`.
pub fn verify_reflection_lemma(total_max: u32) -> VerificationReport {
    let tuples: Vec<(u32, u32)> = (1..=total_max)
        .flat_map(|m| (0..=total_max - m).map(move |n| (m, n)))
        .collect();
    run(
        "reflection",
        json!({"m_plus_n_max": total_max}),
        Mode::Assert,
        tuples,
        |(m, n)| {
            let mut lhs = BTreeMap::new();
            let mut rhs = BTreeMap::new();
            for p in enumerate(FamilySpec::AllPaths(m, n)).unwrap() {
                if p.step(p.len()) != crate::paths::Step::Up {
                    continue;
                }
                *lhs.entry(p.maj() as i64).or_default() += 1;
                *rhs.entry(p.reflect().maj() as i64 + n as i64).or_default() += 1;
            }
            Check::equality(
                json!({"m": m, "n": n}),
                exponent_sum(&lhs),
                exponent_sum(&rhs),
            )
        },
    )
}

/// What one exhaustive bijection check needs to know.
struct MapSpec {
    forward: Bijection,
    inverse: Bijection,
    domain: FamilySpec,
    /// Expected image of `domain`.
    codomain: Vec<LatticePath>,
    /// Statistic of the image predicted from the input.
    predicted: Box<dyn Fn(&LatticePath) -> i64 + Sync>,
    /// Statistic measured on the image.
    measured: Box<dyn Fn(&LatticePath) -> i64 + Sync>,
    /// Any further per-element contract on the trace.
    extra: Box<dyn Fn(&BijectionTrace) -> bool + Sync>,
}

/// Injectivity, image, inverse round trip, and the statistic contract.
/// The witness sides are the predicted and measured generating functions.
fn check_map(params: serde_json::Value, spec: MapSpec) -> Check {
    let mut predicted = BTreeMap::new();
    let mut measured = BTreeMap::new();
    let mut images = BTreeSet::new();
    let mut size = 0usize;
    let mut ok = true;
    for p in enumerate(spec.domain).unwrap() {
        size += 1;
        let t = match trace(spec.forward, &p) {
            Ok(t) => t,
            Err(_) => {
                ok = false;
                continue;
            }
        };
        *predicted.entry((spec.predicted)(&p)).or_default() += 1;
        *measured.entry((spec.measured)(&t.output)).or_default() += 1;
        ok &= (spec.extra)(&t);
        ok &= spec.inverse.apply(&t.output).ok().as_ref() == Some(&p);
        images.insert(t.output);
    }
    let codomain: BTreeSet<LatticePath> = spec.codomain.into_iter().collect();
    ok &= images.len() == size && images == codomain;
    let (lhs, rhs) = (exponent_sum(&predicted), exponent_sum(&measured));
    Check {
        params,
        holds: ok && lhs == rhs,
        lhs,
        rhs,
    }
}

fn family(spec: FamilySpec) -> Vec<LatticePath> {
    enumerate(spec).unwrap().collect()
}

fn maj(p: &LatticePath) -> i64 {
    p.maj() as i64
}

fn maj_des(p: &LatticePath) -> i64 {
    Statistic::MajMinusDes.of(p) as i64
}

fn ballot_pairs(n_max: u32) -> Vec<(u32, u32)> {
    (1..=n_max)
        .flat_map(|n| (1..=n).map(move |r| (n, r)))
        .collect()
}

/// Exhaustive checks of `psi`, `phi`, `f` and `g` up to `n_max`.
pub fn verify_bijections(n_max: u32) -> Vec<VerificationReport> {
    let range = json!({"n_min": 1, "n_max": n_max});
    let psi = run(
        "bijection-psi",
        range.clone(),
        Mode::Assert,
        ballot_pairs(n_max),
        |(n, r)| {
            check_map(
                json!({"n": n, "r": r}),
                MapSpec {
                    forward: Bijection::Psi,
                    inverse: Bijection::PsiInv,
                    domain: FamilySpec::HeightAbove(n, r),
                    codomain: if r < n {
                        family(FamilySpec::AllPaths(n + r, n - r - 1))
                    } else {
                        Vec::new()
                    },
                    predicted: Box::new(maj),
                    measured: Box::new(maj),
                    extra: Box::new(|t| t.input.descent_set() == t.output.descent_set()),
                },
            )
        },
    );
    let phi = run(
        "bijection-phi",
        range,
        Mode::Assert,
        ballot_pairs(n_max),
        |(n, r)| {
            let shift = (n - r) as i64;
            check_map(
                json!({"n": n, "r": r}),
                MapSpec {
                    forward: Bijection::Phi,
                    inverse: Bijection::PhiInv,
                    domain: FamilySpec::HeightAtMost(n, r),
                    codomain: family(FamilySpec::Ballot(n, r)),
                    predicted: Box::new(move |p| maj(p) - shift),
                    measured: Box::new(maj_des),
                    extra: Box::new(|_| true),
                },
            )
        },
    );
    let star_range = json!({"n_min": 2, "n_max": n_max});
    let f = run(
        "bijection-f",
        star_range.clone(),
        Mode::Assert,
        (2..=n_max).collect(),
        |n: u32| {
            let tall = family(FamilySpec::Catalan(n))
                .into_iter()
                .filter(|p| p.height() >= 2)
                .collect();
            check_map(
                json!({"n": n}),
                MapSpec {
                    forward: Bijection::F,
                    inverse: Bijection::FInv,
                    domain: FamilySpec::BallotStar(n),
                    codomain: tall,
                    predicted: Box::new(maj),
                    measured: Box::new(maj),
                    extra: Box::new(|t| {
                        t.stat_delta.maj == 0
                            && t.stat_delta.des == 0
                            && t.output.height() >= 2
                            && t.point("Q") == t.point("R").map(|r| r + 1)
                    }),
                },
            )
        },
    );
    let g = run(
        "bijection-g",
        star_range,
        Mode::Assert,
        (2..=n_max).collect(),
        |n: u32| {
            let outside = family(FamilySpec::Catalan(n))
                .into_iter()
                .filter(|p| !FamilySpec::Omega(n).contains(p))
                .collect();
            check_map(
                json!({"n": n}),
                MapSpec {
                    forward: Bijection::G,
                    inverse: Bijection::GInv,
                    domain: FamilySpec::BallotStarStar(n),
                    codomain: outside,
                    predicted: Box::new(|p| maj_des(p) - 2),
                    measured: Box::new(maj_des),
                    extra: Box::new(g_contract),
                },
            )
        },
    );
    vec![psi, phi, f, g]
}

/// Height gap, and the `(maj, des)` change of each case: `(3, 1)` when
/// Case 2 starts its wedge at point 1, `(2, 0)` otherwise.
fn g_contract(t: &BijectionTrace) -> bool {
    let Ok((lo, hi)) = t.output.split_heights() else {
        return false;
    };
    let expected = match t.case_taken {
        Some(Case::Case2) if t.point("Y") == Some(1) => (3, 1),
        Some(_) => (2, 0),
        None => return false,
    };
    hi >= lo + 3 && (t.stat_delta.maj, t.stat_delta.des) == expected
}

/// Parameter bounds for every suite. `Default` gives the standard run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub macmahon_n: u32,
    pub fuerlinger_hofbauer_n: u32,
    pub rubenstein_m: u32,
    pub rubenstein_n: u32,
    pub q_rubenstein_m: u32,
    pub q_rubenstein_n: u32,
    pub qballot_n: u32,
    pub qballot_closed_n: u32,
    pub reflection_total: u32,
    pub bijections_n: u32,
    pub expansion_m: u32,
    pub expansion_n: u32,
    pub eq5_n: u32,
    pub theorem_main_n: u32,
    pub scan_total: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            macmahon_n: 8,
            fuerlinger_hofbauer_n: 9,
            rubenstein_m: 12,
            rubenstein_n: 12,
            q_rubenstein_m: 10,
            q_rubenstein_n: 10,
            qballot_n: 9,
            qballot_closed_n: 12,
            reflection_total: 14,
            bijections_n: 10,
            expansion_m: 6,
            expansion_n: 10,
            eq5_n: 10,
            theorem_main_n: 12,
            scan_total: 20,
        }
    }
}

impl Bounds {
    /// Replaces every `n` bound, every `m` bound and every `m + n` bound that
    /// is given.
    pub fn with_overrides(
        mut self,
        n_max: Option<u32>,
        m_max: Option<u32>,
        sum_max: Option<u32>,
    ) -> Self {
        if let Some(n) = n_max {
            self.macmahon_n = n;
            self.fuerlinger_hofbauer_n = n;
            self.rubenstein_n = n;
            self.q_rubenstein_n = n;
            self.qballot_n = n;
            self.qballot_closed_n = n;
            self.bijections_n = n;
            self.expansion_n = n;
            self.eq5_n = n;
            self.theorem_main_n = n;
        }
        if let Some(m) = m_max {
            self.rubenstein_m = m;
            self.q_rubenstein_m = m;
            self.expansion_m = m;
        }
        if let Some(s) = sum_max {
            self.reflection_total = s;
            self.scan_total = s;
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    MacMahon,
    FuerlingerHofbauer,
    Rubenstein,
    QRubenstein,
    QBallot,
    Reflection,
    Bijections,
    BallotExpansion,
    Eq5,
    TheoremMain,
    Nonnegativity,
    Unimodality,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::All,
        Suite::MacMahon,
        Suite::FuerlingerHofbauer,
        Suite::Rubenstein,
        Suite::QRubenstein,
        Suite::QBallot,
        Suite::Reflection,
        Suite::Bijections,
        Suite::BallotExpansion,
        Suite::Eq5,
        Suite::TheoremMain,
        Suite::Nonnegativity,
        Suite::Unimodality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::MacMahon => "macmahon",
            Suite::FuerlingerHofbauer => "fuerlinger-hofbauer",
            Suite::Rubenstein => "rubenstein",
            Suite::QRubenstein => "q-rubenstein",
            Suite::QBallot => "qballot",
            Suite::Reflection => "reflection",
            Suite::Bijections => "bijections",
            Suite::BallotExpansion => "ballot-expansion",
            Suite::Eq5 => "ballot-expansion-m2",
            Suite::TheoremMain => "theorem-main",
            Suite::Nonnegativity => "nonnegativity",
            Suite::Unimodality => "unimodality",
        }
    }

    pub fn run(self, b: &Bounds) -> Vec<VerificationReport> {
        match self {
            Suite::All => Suite::ALL[1..].iter().flat_map(|s| s.run(b)).collect(),
            Suite::MacMahon => vec![verify_macmahon(b.macmahon_n)],
            Suite::FuerlingerHofbauer => vec![verify_fuerlinger_hofbauer(b.fuerlinger_hofbauer_n)],
            Suite::Rubenstein => vec![verify_rubenstein(b.rubenstein_m, b.rubenstein_n)],
            Suite::QRubenstein => verify_q_rubenstein(b.q_rubenstein_m, b.q_rubenstein_n),
            Suite::QBallot => verify_qballot_theorem(b.qballot_n, b.qballot_closed_n),
            Suite::Reflection => vec![verify_reflection_lemma(b.reflection_total)],
            Suite::Bijections => verify_bijections(b.bijections_n),
            Suite::BallotExpansion => verify_ballot_expansion(b.expansion_m, b.expansion_n),
            Suite::Eq5 => verify_eq5(b.eq5_n),
            Suite::TheoremMain => verify_theorem_main(b.theorem_main_n),
            Suite::Nonnegativity => vec![scan_nonnegativity(b.scan_total)],
            Suite::Unimodality => vec![scan_unimodality(b.scan_total)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('_', "-");
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s || (s == "eq5" && *suite == Suite::Eq5))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Syntax(format!("unknown suite {s:?} ({})", names.join(", ")))
            })
    }
}
