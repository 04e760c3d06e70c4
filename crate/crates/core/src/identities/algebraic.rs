//! Checks of the closed-form identities, each grounded against path
//! enumeration where the statement involves a path sum.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::report::{finish, run, Check, Mode, VerificationReport};
use crate::bijections::{f, g};
use crate::paths::{enumerate, gen_fun, FamilySpec, Statistic};
use crate::qpoly::{
    ballot_q, ballot_q_binomial_form, gaussian_binomial, super_catalan_q, super_catalan_t_q,
    PolyFraction, QPoly,
};

fn sq(m: u32, n: u32) -> QPoly {
    super_catalan_q(m, n).expect("S_q is a polynomial")
}

fn tq(m: u32, n: u32) -> QPoly {
    super_catalan_t_q(m, n).expect("T_q is a polynomial for n >= 1")
}

fn gf(spec: FamilySpec, stat: Statistic) -> QPoly {
    gen_fun(spec, stat).expect("family parameters validated by caller")
}

fn mono(exp: i64) -> QPoly {
    QPoly::monomial(1, exp)
}

/// `1 + q^k`
fn one_plus(k: i64) -> QPoly {
    &QPoly::one() + &mono(k)
}

/// Where the q-ballot numbers used by an identity come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grounding {
    /// `[2n-1]! [2r] / ([n+r]! [n-r]!)`.
    ClosedForm,
    /// `sum over Ballot(n, r) of q^(maj - des)`.
    Enumeration,
}

impl Grounding {
    pub const BOTH: [Grounding; 2] = [Grounding::ClosedForm, Grounding::Enumeration];
}

/// `B_q(n, r)` for `1 <= r <= n <= n_max`; lookups with `r > n` give 0, the
/// value both closed forms extend to.
pub struct BallotTable {
    values: HashMap<(u32, u32), QPoly>,
}

impl BallotTable {
    pub fn new(grounding: Grounding, n_max: u32) -> Self {
        let pairs: Vec<(u32, u32)> = (1..=n_max)
            .flat_map(|n| (1..=n).map(move |r| (n, r)))
            .collect();
        let values = pairs
            .into_par_iter()
            .map(|(n, r)| {
                let v = match grounding {
                    Grounding::ClosedForm => ballot_q(n, r).expect("1 <= r <= n"),
                    Grounding::Enumeration => gf(FamilySpec::Ballot(n, r), Statistic::MajMinusDes),
                };
                ((n, r), v)
            })
            .collect();
        BallotTable { values }
    }

    pub fn get(&self, n: u32, r: u32) -> QPoly {
        if r > n {
            return QPoly::zero();
        }
        self.values
            .get(&(n, r))
            .cloned()
            .unwrap_or_else(|| panic!("B_q({n},{r}) outside the table"))
    }
}

/// `S_q(0, n) = [2n choose n]_q = sum over AllPaths(n, n) of q^maj`.
pub fn verify_macmahon(n_max: u32) -> VerificationReport {
    let tuples: Vec<u32> = (0..=n_max).collect();
    run(
        "macmahon",
        json!({"n_min": 0, "n_max": n_max}),
        Mode::Assert,
        tuples,
        |n| {
            let closed = sq(0, n);
            let binom = gaussian_binomial(2 * n, n as i64);
            let paths = gf(FamilySpec::AllPaths(n, n), Statistic::Maj);
            let holds = closed == binom && binom == paths;
            Check {
                params: json!({"n": n}),
                lhs: closed,
                rhs: paths,
                holds,
            }
        },
    )
}

/// `T_q(1, n)` and `T_q(n, 1)` against `maj - des` and `maj` over Catalan
/// paths.
pub fn verify_fuerlinger_hofbauer(n_max: u32) -> VerificationReport {
    let tuples: Vec<(u32, bool)> = (1..=n_max).flat_map(|n| [(n, false), (n, true)]).collect();
    run(
        "fuerlinger-hofbauer",
        json!({"n_min": 1, "n_max": n_max}),
        Mode::Assert,
        tuples,
        |(n, swapped)| {
            let spec = FamilySpec::NonnegPaths(n, n);
            if swapped {
                Check::equality(
                    json!({"n": n, "form": "T_q(n,1) = sum q^maj"}),
                    tq(n, 1),
                    gf(spec, Statistic::Maj),
                )
            } else {
                Check::equality(
                    json!({"n": n, "form": "T_q(1,n) = sum q^(maj-des)"}),
                    tq(1, n),
                    gf(spec, Statistic::MajMinusDes),
                )
            }
        },
    )
}

/// `4 T(m,n) = T(m+1,n) + T(m,n+1)` on the integers `T = T_q(1)`.
pub fn verify_rubenstein(m_max: u32, n_max: u32) -> VerificationReport {
    let start = Instant::now();
    let cells: Vec<(u32, u32)> = (1..=m_max + 1)
        .flat_map(|m| (1..=n_max + 1).map(move |n| (m, n)))
        .collect();
    let t: HashMap<(u32, u32), BigInt> = cells
        .into_par_iter()
        .map(|(m, n)| ((m, n), tq(m, n).eval_at_one()))
        .collect();
    let outcomes = (1..=m_max)
        .flat_map(|m| (1..=n_max).map(move |n| (m, n)))
        .map(|(m, n)| {
            let lhs: BigInt = &t[&(m, n)] * 4;
            let rhs: BigInt = &t[&(m + 1, n)] + &t[&(m, n + 1)];
            Check::equality(json!({"m": m, "n": n}), lhs.into(), rhs.into())
        })
        .collect();
    finish(
        "rubenstein",
        json!({"m_min": 1, "m_max": m_max, "n_min": 1, "n_max": n_max}),
        Mode::Assert,
        outcomes,
        start,
    )
}

fn q_rubenstein_sides(m: u32, n: u32, swapped: bool) -> (QPoly, QPoly) {
    let k = n as i64 - m as i64;
    let lhs = one_plus(n as i64) * one_plus(k) * tq(m, n);
    let cross = if swapped { tq(m + 1, n) } else { tq(n, m + 1) };
    let rhs = cross.shift(k) + tq(m, n + 1);
    (lhs, rhs)
}

/// `(1 + q^n)(1 + q^(n-m)) T_q(m,n) = q^(n-m) T_q(n,m+1) + T_q(m,n+1)`,
/// asserted for `1 <= m <= n`. Two companion reports are never
/// asserted: the same identity for `n < m`, and the variant with
/// `T_q(m+1,n)` in place of `T_q(n,m+1)`.
pub fn verify_q_rubenstein(m_max: u32, n_max: u32) -> Vec<VerificationReport> {
    let upper: Vec<(u32, u32)> = (1..=m_max.min(n_max))
        .flat_map(|m| (m..=n_max).map(move |n| (m, n)))
        .collect();
    let lower: Vec<(u32, u32)> = (1..=m_max)
        .flat_map(|m| (1..m.min(n_max + 1)).map(move |n| (m, n)))
        .collect();
    let range = json!({"m_max": m_max, "n_max": n_max});
    let side = |(m, n): (u32, u32), swapped: bool| {
        let (lhs, rhs) = q_rubenstein_sides(m, n, swapped);
        Check::equality(json!({"m": m, "n": n}), lhs, rhs)
    };
    vec![
        run(
            "q-rubenstein",
            range.clone(),
            Mode::Assert,
            upper.clone(),
            |t| side(t, false),
        ),
        run(
            "q-rubenstein-n-lt-m",
            range.clone(),
            Mode::Report,
            lower,
            |t| side(t, false),
        ),
        run("q-rubenstein-swapped", range, Mode::Report, upper, |t| {
            side(t, true)
        }),
    ]
}

fn ballot_pairs(n_max: u32) -> Vec<(u32, u32)> {
    (1..=n_max)
        .flat_map(|n| (1..=n).map(move |r| (n, r)))
        .collect()
}

/// `B_q(n,r) = sum over Ballot(n,r) of q^(maj - des)`, the agreement of the
/// two closed forms up to `closed_n_max`, and the replay of the proof route
/// through gaussian binomials, `psi` and `phi`.
pub fn verify_qballot_theorem(n_max: u32, closed_n_max: u32) -> Vec<VerificationReport> {
    let theorem = run(
        "qballot",
        json!({"n_min": 1, "n_max": n_max}),
        Mode::Assert,
        ballot_pairs(n_max),
        |(n, r)| {
            Check::equality(
                json!({"n": n, "r": r}),
                ballot_q(n, r).unwrap(),
                gf(FamilySpec::Ballot(n, r), Statistic::MajMinusDes),
            )
        },
    );
    let forms = run(
        "qballot-closed-forms",
        json!({"n_min": 1, "n_max": closed_n_max}),
        Mode::Assert,
        ballot_pairs(closed_n_max),
        |(n, r)| {
            Check::equality(
                json!({"n": n, "r": r}),
                ballot_q(n, r).unwrap(),
                ballot_q_binomial_form(n, r).unwrap(),
            )
        },
    );
    let pipeline = run(
        "qballot-proof-pipeline",
        json!({"n_min": 1, "n_max": n_max}),
        Mode::Assert,
        ballot_pairs(n_max),
        |(n, r)| qballot_pipeline(n, r),
    );
    vec![theorem, forms, pipeline]
}

/// Replays the proof for one `(n, r)`:
///
/// 1. `[2n-1 choose n+r-1]_q` and `[2n-1 choose n+r]_q` are the `maj`
///    generating functions of the two unrestricted families;
/// 2. `psi` carries the tall paths onto the second family keeping `maj`, so
///    the difference is the `maj` generating function of the low paths;
/// 3. `phi` carries the low paths onto `Ballot(n, r)` turning `maj` into
///    `maj - des + (n - r)`.
fn qballot_pipeline(n: u32, r: u32) -> Check {
    let params = json!({"n": n, "r": r});
    let top = 2 * n - 1;
    let binom_diff =
        &gaussian_binomial(top, (n + r - 1) as i64) - &gaussian_binomial(top, (n + r) as i64);
    let low = gf(FamilySpec::HeightAtMost(n, r), Statistic::Maj);

    let first = gf(FamilySpec::AllPaths(n + r - 1, n - r), Statistic::Maj)
        == gaussian_binomial(top, (n + r - 1) as i64);
    let second = if r < n {
        gf(FamilySpec::AllPaths(n + r, n - r - 1), Statistic::Maj)
            == gaussian_binomial(top, (n + r) as i64)
    } else {
        gaussian_binomial(top, (n + r) as i64).is_zero()
    };

    let mut tall_maj = Vec::<u64>::new();
    let mut image_maj = Vec::<u64>::new();
    let mut psi_ok = true;
    for p in enumerate(FamilySpec::HeightAbove(n, r)).unwrap() {
        match crate::bijections::psi(&p, n, r) {
            Ok(q) => {
                bump(&mut tall_maj, p.maj());
                bump(&mut image_maj, q.maj());
            }
            Err(_) => psi_ok = false,
        }
    }
    let cancelled = psi_ok
        && tall_maj == image_maj
        && &gaussian_binomial(top, (n + r - 1) as i64) - &QPoly::from_counts(&image_maj) == low;

    let mut phi_stat = Vec::<u64>::new();
    let mut phi_ok = true;
    for p in enumerate(FamilySpec::HeightAtMost(n, r)).unwrap() {
        match crate::bijections::phi(&p, n, r) {
            Ok(q) => bump(&mut phi_stat, q.maj() - q.des()),
            Err(_) => phi_ok = false,
        }
    }
    let ballot_sum = gf(FamilySpec::Ballot(n, r), Statistic::MajMinusDes);
    let shifted = low.shift(-((n - r) as i64));
    let phi_step = phi_ok && QPoly::from_counts(&phi_stat) == ballot_sum && shifted == ballot_sum;

    Check {
        params,
        lhs: binom_diff.shift(-((n - r) as i64)),
        rhs: ballot_sum,
        holds: first && second && cancelled && binom_diff == low && phi_step,
    }
}

fn bump(counts: &mut Vec<u64>, e: u64) {
    let e = e as usize;
    if counts.len() <= e {
        counts.resize(e + 1, 0);
    }
    counts[e] += 1;
}

/// `(n-1)(m-1)` can be negative only for zero parameters, which are outside
/// every range used here.
fn ballot_expansion_sides(m: u32, n: u32, table: &BallotTable) -> (PolyFraction, PolyFraction) {
    let lhs = tq(m, n).shift(((n as i64) - 1) * ((m as i64) - 1));
    let mut rhs = PolyFraction::zero();
    for r in 1..=m {
        let sign = if r % 2 == 1 { 1 } else { -1 };
        let k = r as i64 - 1;
        let power = k * (k - 1) / 2;
        let num =
            QPoly::monomial(sign, power) * one_plus(m as i64) * table.get(n, r) * table.get(m, r);
        let term = PolyFraction::new(num, one_plus(r as i64)).expect("1 + q^r is nonzero");
        rhs = &rhs + &term;
    }
    (PolyFraction::from(lhs), rhs)
}

fn fraction_check(params: serde_json::Value, lhs: PolyFraction, rhs: PolyFraction) -> Check {
    let holds = lhs == rhs;
    let lhs_poly = lhs.to_poly().expect("left side is a polynomial");
    match rhs.to_poly() {
        Ok(rhs_poly) => Check {
            params,
            lhs: lhs_poly,
            rhs: rhs_poly,
            holds,
        },
        // Not even a polynomial: show the cross-multiplied sides instead.
        Err(_) => Check {
            params,
            lhs: &lhs_poly * rhs.den(),
            rhs: rhs.num().clone(),
            holds,
        },
    }
}

/// `q^((n-1)(m-1)) T_q(m,n) = sum_{r=1}^{m} (-1)^(r-1) q^C(r-1,2)
/// (1+q^m)/(1+q^r) B_q(n,r) B_q(m,r)`, once per grounding of `B_q`.
pub fn verify_ballot_expansion(m_max: u32, n_max: u32) -> Vec<VerificationReport> {
    Grounding::BOTH
        .into_iter()
        .map(|grounding| {
            let start = Instant::now();
            let table = BallotTable::new(grounding, m_max.max(n_max));
            let tuples: Vec<(u32, u32)> = (1..=m_max)
                .flat_map(|m| (1..=n_max).map(move |n| (m, n)))
                .collect();
            let outcomes = tuples
                .into_par_iter()
                .map(|(m, n)| {
                    let (lhs, rhs) = ballot_expansion_sides(m, n, &table);
                    fraction_check(json!({"m": m, "n": n}), lhs, rhs)
                })
                .collect();
            finish(
                "ballot-expansion",
                json!({"m_max": m_max, "n_max": n_max, "grounding": grounding}),
                Mode::Assert,
                outcomes,
                start,
            )
        })
        .collect()
}

/// `q^(n-1) T_q(2,n) = (1 + q^2) B_q(n,1) - B_q(n,2)`, once per grounding.
pub fn verify_eq5(n_max: u32) -> Vec<VerificationReport> {
    Grounding::BOTH
        .into_iter()
        .map(|grounding| {
            let start = Instant::now();
            let table = BallotTable::new(grounding, n_max);
            let outcomes = (2..=n_max)
                .into_par_iter()
                .map(|n| {
                    let lhs = tq(2, n).shift(n as i64 - 1);
                    let rhs = one_plus(2) * table.get(n, 1) - table.get(n, 2);
                    Check::equality(json!({"n": n}), lhs, rhs)
                })
                .collect();
            finish(
                "ballot-expansion-m2",
                json!({"n_min": 2, "n_max": n_max, "grounding": grounding}),
                Mode::Assert,
                outcomes,
                start,
            )
        })
        .collect()
}

/// The `m = 2` interpretation through `Omega(n)`, checked three ways:
///
/// * `theorem-main-proof`: `q^(n-1) T_q(2,n) = q^((n-1)^2) + q^2 sum_Omega
///   q^(maj-des)`, the form the bijective argument establishes (asserted);
/// * `theorem-main-stated`: `T_q(2,n) = q^(n-1) + q^(3-n) sum_Omega
///   q^(maj-des)` in its stated form (reported; it agrees only where
///   `n - 1 = (n-1)(n-2)`, i.e. `n` in {1, 3});
/// * `theorem-main-partial-sums`: the two halves of the proof, with the
///   partial sums over `BallotStar(n)` / `BallotStarStar(n)` pushed through
///   `f` and `g`, and `B_q(n,1)` taken from both groundings (asserted,
///   `n >= 2`).
pub fn verify_theorem_main(n_max: u32) -> Vec<VerificationReport> {
    let omega: Vec<QPoly> = (1..=n_max)
        .into_par_iter()
        .map(|n| gf(FamilySpec::Omega(n), Statistic::MajMinusDes))
        .collect();
    let omega_sum = |n: u32| omega[(n - 1) as usize].clone();
    let range = json!({"n_min": 1, "n_max": n_max});

    let proof = run(
        "theorem-main-proof",
        range.clone(),
        Mode::Assert,
        (1..=n_max).collect(),
        |n: u32| {
            let lhs = tq(2, n).shift(n as i64 - 1);
            let sq_exp = (n as i64 - 1) * (n as i64 - 1);
            let rhs = mono(sq_exp) + omega_sum(n).shift(2);
            Check::equality(json!({"n": n}), lhs, rhs)
        },
    );
    let printed = run(
        "theorem-main-stated",
        range,
        Mode::Report,
        (1..=n_max).collect(),
        |n: u32| {
            let lhs = tq(2, n);
            let rhs = mono(n as i64 - 1) + omega_sum(n).shift(3 - n as i64);
            Check::equality(json!({"n": n}), lhs, rhs)
        },
    );
    let partial = run(
        "theorem-main-partial-sums",
        json!({"n_min": 2, "n_max": n_max}),
        Mode::Assert,
        (2..=n_max).collect(),
        |n: u32| partial_sums(n, &omega_sum(n)),
    );
    vec![proof, printed, partial]
}

fn partial_sums(n: u32, omega: &QPoly) -> Check {
    let stat = Statistic::MajMinusDes;
    let closed = ballot_q(n, 1).unwrap();
    let enumerated = gf(FamilySpec::Ballot(n, 1), stat);

    let mut star = Vec::new();
    let mut star_image = Vec::new();
    for p in enumerate(FamilySpec::BallotStar(n)).unwrap() {
        bump(&mut star, stat.of(&p));
        if let Ok(q) = f(&p) {
            bump(&mut star_image, stat.of(&q));
        }
    }
    let mut rest = Vec::new();
    let mut rest_image = Vec::new();
    for p in enumerate(FamilySpec::BallotStarStar(n)).unwrap() {
        bump(&mut rest, stat.of(&p));
        if let Ok(q) = g(&p) {
            bump(&mut rest_image, stat.of(&q));
        }
    }
    let (star, star_image) = (QPoly::from_counts(&star), QPoly::from_counts(&star_image));
    let (rest, rest_image) = (QPoly::from_counts(&rest), QPoly::from_counts(&rest_image));

    let mut tall = Vec::new();
    let mut outside = Vec::new();
    for p in enumerate(FamilySpec::Catalan(n)).unwrap() {
        if p.height() >= 2 {
            bump(&mut tall, stat.of(&p));
        }
        if !FamilySpec::Omega(n).contains(&p) {
            bump(&mut outside, stat.of(&p));
        }
    }
    let (tall, outside) = (QPoly::from_counts(&tall), QPoly::from_counts(&outside));

    let first_half = &closed - &star;
    let second_half = closed.shift(2) - &rest;
    let sq_exp = (n as i64 - 1) * (n as i64 - 1);
    let holds = closed == enumerated
        && star == star_image
        && star_image == tall
        && rest == rest_image.shift(2)
        && rest_image == outside
        && first_half == mono(sq_exp)
        && second_half == omega.shift(2);
    Check {
        params: json!({"n": n}),
        lhs: &first_half + &second_half,
        rhs: mono(sq_exp) + omega.shift(2),
        holds,
    }
}

/// Every `S_q(m,n)` with `m + n <= bound` has nonnegative coefficients.
pub fn scan_nonnegativity(bound: u32) -> VerificationReport {
    scan("nonnegativity", bound, Mode::Assert, QPoly::is_nonnegative)
}

/// Unimodality of `S_q(m,n)` for `m + n <= bound`. An open conjecture, so
/// the result is reported, never asserted.
pub fn scan_unimodality(bound: u32) -> VerificationReport {
    scan("unimodality", bound, Mode::Report, QPoly::is_unimodal)
}

fn scan(
    identity: &str,
    bound: u32,
    mode: Mode,
    property: fn(&QPoly) -> bool,
) -> VerificationReport {
    let tuples: Vec<(u32, u32)> = (0..=bound)
        .flat_map(|m| (0..=bound - m).map(move |n| (m, n)))
        .collect();
    run(
        identity,
        json!({"m_plus_n_max": bound}),
        mode,
        tuples,
        |(m, n)| {
            let s = sq(m, n);
            Check {
                params: json!({"m": m, "n": n}),
                holds: property(&s),
                lhs: s,
                rhs: QPoly::zero(),
            }
        },
    )
}
