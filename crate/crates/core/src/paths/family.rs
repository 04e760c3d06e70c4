//! Path families, their lazy enumeration in lexicographic order (up before
//! down), sharded enumeration and generating functions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LatticePath, Step};
use crate::error::{domain, Error, Result};
use crate::qpoly::QPoly;

/// A named family of lattice paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `m` up steps and `n` down steps in any order.
    AllPaths(u32, u32),
    /// `AllPaths(m, n)` never going below level 0.
    NonnegPaths(u32, u32),
    /// Catalan paths of length `2n`.
    Catalan(u32),
    /// Length `2n`, first step up, ending at and never below `-2r + 2`.
    Ballot(u32, u32),
    /// Catalan paths with `h_+ <= h_- + 2`.
    Omega(u32),
    /// `Ballot(n, 2)` paths that do not reach level -1 strictly before their
    /// right-most maximum.
    BallotStar(u32),
    /// `Ballot(n, 2)` minus `BallotStar(n)`.
    BallotStarStar(u32),
    /// `AllPaths(n + r - 1, n - r)` with height above `2r - 1`.
    HeightAbove(u32, u32),
    /// `AllPaths(n + r - 1, n - r)` with height at most `2r - 1`.
    HeightAtMost(u32, u32),
}

/// Word shape shared by every member: exact step counts, a level floor and a
/// fixed prefix.
struct Shape {
    ups: usize,
    downs: usize,
    floor: Option<i64>,
    prefix: Vec<Step>,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        match *self {
            AllPaths(..) | NonnegPaths(..) | Catalan(_) => Ok(()),
            Ballot(n, r) | HeightAbove(n, r) | HeightAtMost(n, r) if r < 1 || r > n => {
                Err(domain(format!("{self} requires 1 <= r <= n")))
            }
            Omega(0) => Err(domain(format!("{self} requires n >= 1"))),
            BallotStar(n) | BallotStarStar(n) if n < 2 => {
                Err(domain(format!("{self} requires n >= 2")))
            }
            _ => Ok(()),
        }
    }

    fn shape(&self) -> Shape {
        use FamilySpec::*;
        let plain = |ups: u32, downs: u32, floor| Shape {
            ups: ups as usize,
            downs: downs as usize,
            floor,
            prefix: Vec::new(),
        };
        match *self {
            AllPaths(m, n) => plain(m, n, None),
            NonnegPaths(m, n) => plain(m, n, Some(0)),
            Catalan(n) | Omega(n) => plain(n, n, Some(0)),
            Ballot(n, r) => Shape {
                prefix: vec![Step::Up],
                ..plain(n + 1 - r, n + r - 1, Some(2 - 2 * r as i64))
            },
            BallotStar(n) | BallotStarStar(n) => Ballot(n, 2).shape(),
            HeightAbove(n, r) | HeightAtMost(n, r) => plain(n + r - 1, n - r, None),
        }
    }

    /// Conditions beyond the shape, for a path already known to have it.
    fn refinement_violation(&self, p: &LatticePath) -> Option<String> {
        use FamilySpec::*;
        match *self {
            Omega(_) => {
                let (lo, hi) = p.split_heights().ok()?;
                (hi > lo + 2).then(|| format!("h_+ = {hi} exceeds h_- + 2 = {}", lo + 2))
            }
            BallotStar(_) | BallotStarStar(_) => {
                let early = reaches_minus_one_before_rmax(p);
                match (self, early) {
                    (BallotStar(_), true) => {
                        Some("reaches level -1 before its right-most maximum".into())
                    }
                    (BallotStarStar(_), false) => {
                        Some("does not reach level -1 before its right-most maximum".into())
                    }
                    _ => None,
                }
            }
            HeightAbove(_, r) => {
                let h = p.height();
                (h < 2 * r as i64).then(|| format!("height {h} is not above {}", 2 * r - 1))
            }
            HeightAtMost(_, r) => {
                let h = p.height();
                (h > 2 * r as i64 - 1).then(|| format!("height {h} exceeds {}", 2 * r - 1))
            }
            _ => None,
        }
    }

    /// Why `p` is not a member, or `None` if it is.
    pub fn membership_violation(&self, p: &LatticePath) -> Option<String> {
        if let Err(e) = self.validate() {
            return Some(e.to_string());
        }
        let shape = self.shape();
        if p.ups() != shape.ups || p.downs() != shape.downs {
            return Some(format!(
                "needs {} up and {} down steps, found {} and {}",
                shape.ups,
                shape.downs,
                p.ups(),
                p.downs()
            ));
        }
        if !p.steps().starts_with(&shape.prefix) {
            return Some("must start with an up step".into());
        }
        if let Some(floor) = shape.floor {
            let lowest = p.min_level();
            if lowest < floor {
                return Some(format!("goes down to level {lowest}, below {floor}"));
            }
        }
        self.refinement_violation(p)
    }

    pub fn contains(&self, p: &LatticePath) -> bool {
        self.membership_violation(p).is_none()
    }

    /// `Ok(())` for members, otherwise a domain error naming the failed
    /// condition.
    pub fn check_membership(&self, p: &LatticePath) -> Result<()> {
        match self.membership_violation(p) {
            None => Ok(()),
            Some(why) => Err(domain(format!("path {p} is not in {self}: {why}"))),
        }
    }
}

fn reaches_minus_one_before_rmax(p: &LatticePath) -> bool {
    let r = p.right_most_maximum();
    p.levels()[..r].contains(&-1)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            AllPaths(m, n) => write!(f, "all:{m},{n}"),
            NonnegPaths(m, n) => write!(f, "nonneg:{m},{n}"),
            Catalan(n) => write!(f, "catalan:{n}"),
            Ballot(n, r) => write!(f, "ballot:{n},{r}"),
            Omega(n) => write!(f, "omega:{n}"),
            BallotStar(n) => write!(f, "ballot-star:{n}"),
            BallotStarStar(n) => write!(f, "ballot-star-star:{n}"),
            HeightAbove(n, r) => write!(f, "height-above:{n},{r}"),
            HeightAtMost(n, r) => write!(f, "height-at-most:{n},{r}"),
        }
    }
}

/// Parses `name:args`, e.g. `catalan:5`, `ballot:6,2`, `omega:7`.
impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Syntax(format!("family {s:?} should look like name:args")))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Syntax(format!("bad family argument {a:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity_err = |k: usize| Error::Syntax(format!("family {name} takes {k} argument(s)"));
        let one = || match nums[..] {
            [a] => Ok(a),
            _ => Err(arity_err(1)),
        };
        let two = || match nums[..] {
            [a, b] => Ok((a, b)),
            _ => Err(arity_err(2)),
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "all" => two().map(|(a, b)| FamilySpec::AllPaths(a, b))?,
            "nonneg" => two().map(|(a, b)| FamilySpec::NonnegPaths(a, b))?,
            "catalan" => FamilySpec::Catalan(one()?),
            "ballot" => two().map(|(a, b)| FamilySpec::Ballot(a, b))?,
            "omega" => FamilySpec::Omega(one()?),
            "ballot-star" => FamilySpec::BallotStar(one()?),
            "ballot-star-star" => FamilySpec::BallotStarStar(one()?),
            "height-above" => two().map(|(a, b)| FamilySpec::HeightAbove(a, b))?,
            "height-at-most" => two().map(|(a, b)| FamilySpec::HeightAtMost(a, b))?,
            other => return Err(Error::Syntax(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

/// Lazy enumeration of one family restricted to words starting with a fixed
/// prefix, in lexicographic order with up before down.
pub struct PathIter {
    spec: FamilySpec,
    floor: i64,
    fixed: usize,
    word: Vec<Step>,
    started: bool,
    done: bool,
}

impl PathIter {
    fn new(spec: FamilySpec, prefix: Vec<Step>) -> Self {
        let shape = spec.shape();
        let floor = shape.floor.unwrap_or(i64::MIN);
        let mut done = false;
        let pre_ups = prefix.iter().filter(|&&s| s == Step::Up).count();
        let pre_downs = prefix.len() - pre_ups;
        if !prefix.starts_with(&shape.prefix) && !shape.prefix.starts_with(&prefix) {
            done = true;
        }
        if pre_ups > shape.ups || pre_downs > shape.downs {
            done = true;
        }
        if (shape.ups as i64 - shape.downs as i64) < floor {
            done = true;
        }
        let mut level = 0i64;
        for s in &prefix {
            level += s.delta();
            if level < floor {
                done = true;
            }
        }
        // A shorter caller prefix still has to honour the family's own prefix.
        let prefix = if prefix.len() < shape.prefix.len() {
            shape.prefix.clone()
        } else {
            prefix
        };
        let fixed = prefix.len();
        let mut word = prefix;
        if !done {
            let ups_left = shape.ups - word.iter().filter(|&&s| s == Step::Up).count();
            let downs_left = shape.downs + shape.ups - word.len() - ups_left;
            word.extend(std::iter::repeat_n(Step::Up, ups_left));
            word.extend(std::iter::repeat_n(Step::Down, downs_left));
        }
        PathIter {
            spec,
            floor,
            fixed,
            word,
            started: false,
            done,
        }
    }

    /// Advances `word` to the next shape-valid word, returning false when
    /// exhausted.
    fn advance(&mut self) -> bool {
        let mut level_before = Vec::with_capacity(self.word.len());
        let mut level = 0i64;
        for s in &self.word {
            level_before.push(level);
            level += s.delta();
        }
        let mut downs_in_suffix = 0usize;
        for i in (self.fixed..self.word.len()).rev() {
            match self.word[i] {
                Step::Down => downs_in_suffix += 1,
                Step::Up => {
                    if downs_in_suffix > 0 && level_before[i] > self.floor {
                        let len = self.word.len();
                        let ups_after = len - i - downs_in_suffix;
                        self.word[i] = Step::Down;
                        let mut k = i + 1;
                        for _ in 0..ups_after {
                            self.word[k] = Step::Up;
                            k += 1;
                        }
                        for _ in 0..downs_in_suffix - 1 {
                            self.word[k] = Step::Down;
                            k += 1;
                        }
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            } else {
                self.started = true;
            }
            let p = LatticePath::new(self.word.clone());
            if self.spec.refinement_violation(&p).is_none() {
                return Some(p);
            }
        }
    }
}

/// Every member of `spec`, each exactly once, in lexicographic order.
pub fn enumerate(spec: FamilySpec) -> Result<PathIter> {
    spec.validate()?;
    Ok(PathIter::new(spec, Vec::new()))
}

/// Splits the enumeration of `spec` into at most `shards` independent
/// streams by fixing step prefixes. Concatenating the streams in order
/// reproduces [`enumerate`] exactly.
pub fn enumerate_sharded(spec: FamilySpec, shards: usize) -> Result<Vec<Vec<PathIter>>> {
    spec.validate()?;
    let shards = shards.max(1);
    let shape = spec.shape();
    let free = shape.ups + shape.downs - shape.prefix.len();
    let mut depth = 0;
    while (1usize << depth) < shards && depth < free {
        depth += 1;
    }
    let prefixes: Vec<Vec<Step>> = (0..1usize << depth)
        .map(|bits| {
            let mut p = shape.prefix.clone();
            p.extend((0..depth).rev().map(|b| {
                if bits >> b & 1 == 0 {
                    Step::Up
                } else {
                    Step::Down
                }
            }));
            p
        })
        .collect();
    let groups = shards.min(prefixes.len());
    let per = prefixes.len().div_ceil(groups);
    Ok(prefixes
        .chunks(per)
        .map(|chunk| {
            chunk
                .iter()
                .map(|p| PathIter::new(spec, p.clone()))
                .collect()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Maj,
    MajMinusDes,
}

impl Statistic {
    pub fn of(self, p: &LatticePath) -> u64 {
        match self {
            Statistic::Maj => p.maj(),
            Statistic::MajMinusDes => p.maj() - p.des(),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maj" => Ok(Statistic::Maj),
            "maj-des" | "maj_minus_des" | "maj-minus-des" => Ok(Statistic::MajMinusDes),
            _ => Err(Error::Syntax(format!(
                "unknown statistic {s:?} (use maj or maj-des)"
            ))),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Maj => "maj",
            Statistic::MajMinusDes => "maj-des",
        })
    }
}

fn tally(counts: &mut Vec<u64>, e: u64) {
    let e = e as usize;
    if counts.len() <= e {
        counts.resize(e + 1, 0);
    }
    counts[e] += 1;
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `sum over the family of q^stat(path)`.
pub fn gen_fun(spec: FamilySpec, stat: Statistic) -> Result<QPoly> {
    let mut counts = Vec::new();
    for p in enumerate(spec)? {
        tally(&mut counts, stat.of(&p));
    }
    Ok(QPoly::from_counts(&counts))
}

/// [`gen_fun`] computed over `shards` prefix shards in parallel.
pub fn gen_fun_sharded(spec: FamilySpec, stat: Statistic, shards: usize) -> Result<QPoly> {
    let counts = enumerate_sharded(spec, shards)?
        .into_par_iter()
        .map(|shard| {
            let mut counts = Vec::new();
            for p in shard.into_iter().flatten() {
                tally(&mut counts, stat.of(&p));
            }
            counts
        })
        .reduce(Vec::new, merge);
    Ok(QPoly::from_counts(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::parse_path;
    use crate::qpoly::{ballot_q, gaussian_binomial};

    fn words(spec: FamilySpec) -> Vec<String> {
        enumerate(spec).unwrap().map(|p| p.to_bits()).collect()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Brute force over all 2^len words.
    fn brute(spec: FamilySpec, len: usize) -> Vec<String> {
        let mut out: Vec<String> = (0..1u32 << len)
            .map(|bits| {
                LatticePath::new(
                    (0..len)
                        .rev()
                        .map(|b| {
                            if bits >> b & 1 == 0 {
                                Step::Up
                            } else {
                                Step::Down
                            }
                        })
                        .collect(),
                )
            })
            .filter(|p| spec.contains(p))
            .map(|p| p.to_bits())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn small_families() {
        assert_eq!(words(FamilySpec::Catalan(2)), ["0011", "0101"]);
        assert_eq!(words(FamilySpec::Ballot(2, 2)), ["0111"]);
        assert_eq!(words(FamilySpec::BallotStar(2)), ["0111"]);
        assert!(words(FamilySpec::BallotStarStar(2)).is_empty());
        assert_eq!(words(FamilySpec::AllPaths(0, 0)), [""]);
        assert_eq!(words(FamilySpec::Catalan(0)), [""]);
        assert!(words(FamilySpec::NonnegPaths(1, 2)).is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force_filter() {
        use FamilySpec::*;
        let cases = [
            (AllPaths(3, 4), 7),
            (NonnegPaths(5, 3), 8),
            (Catalan(5), 10),
            (Ballot(5, 1), 10),
            (Ballot(5, 2), 10),
            (Ballot(5, 3), 10),
            (Omega(6), 12),
            (BallotStar(6), 12),
            (BallotStarStar(6), 12),
            (HeightAbove(5, 2), 9),
            (HeightAtMost(5, 2), 9),
        ];
        for (spec, len) in cases {
            assert_eq!(words(spec), brute(spec, len), "{spec}");
        }
    }

    #[test]
    fn counts() {
        for m in 0..=8u32 {
            for n in 0..=(16 - m).min(8) {
                let c = enumerate(FamilySpec::AllPaths(m, n)).unwrap().count() as u64;
                assert_eq!(c, binomial((m + n) as u64, n as u64));
            }
        }
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate(FamilySpec::Catalan(n as u32)).unwrap().count(), c);
        }
        for n in 1..=10 {
            for r in 1..=n {
                let c = enumerate(FamilySpec::Ballot(n, r)).unwrap().count();
                assert_eq!(
                    c.to_string(),
                    ballot_q(n, r).unwrap().eval_at_one().to_string()
                );
            }
            assert_eq!(
                enumerate(FamilySpec::Ballot(n, 1)).unwrap().count(),
                catalan.get(n as usize).copied().unwrap_or(16796)
            );
        }
    }

    #[test]
    fn ballot_star_partition() {
        for n in 2..=10 {
            let all: Vec<_> = enumerate(FamilySpec::Ballot(n, 2)).unwrap().collect();
            let star: Vec<_> = enumerate(FamilySpec::BallotStar(n)).unwrap().collect();
            let rest: Vec<_> = enumerate(FamilySpec::BallotStarStar(n)).unwrap().collect();
            let mut merged = [star, rest].concat();
            merged.sort();
            assert_eq!(merged, all);
        }
    }

    #[test]
    fn omega_membership_from_stats() {
        for p in enumerate(FamilySpec::Catalan(7)).unwrap() {
            let s = p.stats();
            let in_omega = s.h_plus.unwrap() <= s.h_minus.unwrap() + 2;
            assert_eq!(FamilySpec::Omega(7).contains(&p), in_omega);
        }
    }

    #[test]
    fn sharding_preserves_order() {
        use FamilySpec::*;
        for spec in [
            Catalan(6),
            Ballot(6, 2),
            Omega(6),
            AllPaths(2, 1),
            HeightAbove(4, 1),
        ] {
            let full = words(spec);
            for shards in [1, 2, 3, 5, 8, 64] {
                let pieces = enumerate_sharded(spec, shards).unwrap();
                assert!(pieces.len() <= shards);
                let joined: Vec<String> = pieces
                    .into_iter()
                    .flatten()
                    .flatten()
                    .map(|p| p.to_bits())
                    .collect();
                assert_eq!(joined, full, "{spec} with {shards} shards");
            }
        }
    }

    #[test]
    fn gen_fun_examples() {
        assert_eq!(
            gen_fun(FamilySpec::AllPaths(1, 1), Statistic::Maj).unwrap(),
            QPoly::from_i64s(0, &[1, 1])
        );
        assert_eq!(
            gen_fun(FamilySpec::Catalan(2), Statistic::MajMinusDes).unwrap(),
            QPoly::from_i64s(0, &[1, 1])
        );
        // Brute-force grounding of [4 choose 2]_q.
        assert_eq!(
            gen_fun(FamilySpec::AllPaths(2, 2), Statistic::Maj).unwrap(),
            QPoly::from_i64s(0, &[1, 1, 2, 1, 1])
        );
        for n in 0..=8 {
            let spec = FamilySpec::AllPaths(n, n);
            let g = gen_fun(spec, Statistic::Maj).unwrap();
            assert_eq!(g, gaussian_binomial(2 * n, n as i64));
            assert_eq!(gen_fun_sharded(spec, Statistic::Maj, 4).unwrap(), g);
        }
    }

    #[test]
    fn domain_errors() {
        for spec in [
            FamilySpec::Ballot(2, 3),
            FamilySpec::Ballot(2, 0),
            FamilySpec::Omega(0),
            FamilySpec::BallotStar(1),
            FamilySpec::HeightAtMost(3, 4),
        ] {
            assert!(matches!(enumerate(spec), Err(Error::Domain(_))), "{spec}");
        }
    }

    #[test]
    fn family_text_roundtrip() {
        for s in [
            "all:3,4",
            "nonneg:4,2",
            "catalan:5",
            "ballot:6,2",
            "omega:7",
            "ballot-star:5",
            "ballot-star-star:5",
            "height-above:4,2",
            "height-at-most:4,2",
        ] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
        assert!("catalan".parse::<FamilySpec>().is_err());
        assert!("catalan:1,2".parse::<FamilySpec>().is_err());
        assert!("bogus:1".parse::<FamilySpec>().is_err());
        assert!("ballot:x,2".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn membership_messages_name_the_condition() {
        let p = parse_path("0011").unwrap();
        let err = FamilySpec::BallotStar(2)
            .check_membership(&p)
            .unwrap_err()
            .to_string();
        assert!(err.contains("needs 1 up and 3 down"), "{err}");
        let p = parse_path("1001").unwrap();
        let err = FamilySpec::Catalan(2)
            .check_membership(&p)
            .unwrap_err()
            .to_string();
        assert!(err.contains("below 0"), "{err}");
    }
}
