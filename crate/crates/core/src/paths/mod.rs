//! Lattice paths made of up and down steps, their descent statistics and the
//! geometric landmarks used by the bijections.
//!
//! Two index spaces are in play and kept apart by naming:
//!
//! * **steps** are 1-indexed, `1..=len`, matching the word `π_1 ... π_ℓ`.
//!   Descents and the major index are sums of step indices.
//! * **points** are 0-indexed, `0..=len`. Point `j` is where step `j` ends,
//!   so step `j` runs from point `j - 1` to point `j`.
//!
//! Landmark searches (maxima, first hits, `X`) return point indices.

mod family;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

pub use family::{
    enumerate, enumerate_sharded, gen_fun, gen_fun_sharded, FamilySpec, PathIter, Statistic,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step `i`, 1-indexed.
    pub fn step(&self, i: usize) -> Step {
        self.steps[i - 1]
    }

    /// The step ending at `point`, if any.
    pub fn step_into(&self, point: usize) -> Option<Step> {
        point
            .checked_sub(1)
            .and_then(|i| self.steps.get(i))
            .copied()
    }

    /// The step leaving `point`, if any.
    pub fn step_out_of(&self, point: usize) -> Option<Step> {
        self.steps.get(point).copied()
    }

    pub fn ups(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Up).count()
    }

    pub fn downs(&self) -> usize {
        self.len() - self.ups()
    }

    /// Level of every point `0..=len`.
    pub fn levels(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut level = 0;
        out.push(level);
        for s in &self.steps {
            level += s.delta();
            out.push(level);
        }
        out
    }

    pub fn end_level(&self) -> i64 {
        self.ups() as i64 - self.downs() as i64
    }

    pub fn height(&self) -> i64 {
        self.levels().into_iter().max().unwrap_or(0)
    }

    pub fn min_level(&self) -> i64 {
        self.levels().into_iter().min().unwrap_or(0)
    }

    /// Same number of ups and downs and never below level 0.
    pub fn is_catalan(&self) -> bool {
        self.end_level() == 0 && self.min_level() >= 0
    }

    /// Step indices `i` with step `i` down and step `i + 1` up.
    pub fn descent_set(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::Down && w[1] == Step::Up)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn maj(&self) -> u64 {
        self.descent_set().iter().map(|&i| i as u64).sum()
    }

    pub fn des(&self) -> u64 {
        self.descent_set().len() as u64
    }

    /// A point entered by a down step and left by an up step (a valley).
    pub fn is_descent_point(&self, point: usize) -> bool {
        self.step_into(point) == Some(Step::Down) && self.step_out_of(point) == Some(Step::Up)
    }

    pub fn reflect(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().map(|s| s.flipped()).collect())
    }

    /// Copy with step `i` (1-indexed) reversed.
    pub fn with_flipped_step(&self, i: usize) -> LatticePath {
        let mut steps = self.steps.clone();
        steps[i - 1] = steps[i - 1].flipped();
        LatticePath::new(steps)
    }

    /// Greatest point index attaining the maximum level.
    pub fn right_most_maximum(&self) -> usize {
        let levels = self.levels();
        let top = *levels.iter().max().expect("at least one point");
        levels.iter().rposition(|&l| l == top).unwrap()
    }

    /// Least point index attaining the maximum level.
    pub fn left_most_maximum(&self) -> usize {
        let levels = self.levels();
        let top = *levels.iter().max().expect("at least one point");
        levels.iter().position(|&l| l == top).unwrap()
    }

    /// Least point index at `level`.
    pub fn first_hit(&self, level: i64) -> Option<usize> {
        self.levels().iter().position(|&l| l == level)
    }

    /// The last level-one point at or before the right-most maximum.
    ///
    /// Defined for nonempty paths that never go below level 0 and reach
    /// level 1; these include all nonempty Catalan paths.
    pub fn last_level_one_before_rmax(&self) -> Result<usize> {
        if self.is_empty() || self.min_level() < 0 {
            return Err(domain(format!(
                "last level-one point needs a nonempty path that stays at or above level 0, got {self}"
            )));
        }
        let levels = self.levels();
        let r = self.right_most_maximum();
        levels[..=r]
            .iter()
            .rposition(|&l| l == 1)
            .ok_or_else(|| domain(format!("path {self} never reaches level 1")))
    }

    /// `(h_-, h_+)`: maximum level up to and including `X`, and from `X` on,
    /// where `X` is [`LatticePath::last_level_one_before_rmax`].
    pub fn split_heights(&self) -> Result<(i64, i64)> {
        let x = self.last_level_one_before_rmax()?;
        let levels = self.levels();
        let before = *levels[..=x].iter().max().unwrap();
        let after = *levels[x..].iter().max().unwrap();
        Ok((before, after))
    }

    pub fn stats(&self) -> PathStats {
        let levels = self.levels();
        let descents = self.descent_set();
        let (h_minus, h_plus) = if self.is_catalan() && !self.is_empty() {
            let (a, b) = self.split_heights().expect("nonempty Catalan path");
            (Some(a), Some(b))
        } else {
            (None, None)
        };
        PathStats {
            maj: descents.iter().map(|&i| i as u64).sum(),
            des: descents.len() as u64,
            height: *levels.iter().max().unwrap(),
            h_minus,
            h_plus,
            end_level: *levels.last().unwrap(),
            min_level: *levels.iter().min().unwrap(),
        }
    }

    /// Word over `{0, 1}`, 0 for up.
    pub fn to_bits(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Up => '0',
                Step::Down => '1',
            })
            .collect()
    }

    /// Word over `{U, D}`.
    pub fn to_letters(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Up => 'U',
                Step::Down => 'D',
            })
            .collect()
    }
}

impl From<Vec<Step>> for LatticePath {
    fn from(steps: Vec<Step>) -> Self {
        LatticePath::new(steps)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

/// Parses a word over `{0,1}` or `{u,d}` (case-insensitive). The two
/// alphabets may not be mixed.
pub fn parse_path(text: &str) -> Result<LatticePath> {
    #[derive(PartialEq, Clone, Copy)]
    enum Alphabet {
        Bits,
        Letters,
    }
    let mut alphabet = None;
    let mut steps = Vec::with_capacity(text.len());
    for (position, ch) in text.chars().enumerate() {
        let (step, kind) = match ch {
            '0' => (Step::Up, Alphabet::Bits),
            '1' => (Step::Down, Alphabet::Bits),
            'u' | 'U' => (Step::Up, Alphabet::Letters),
            'd' | 'D' => (Step::Down, Alphabet::Letters),
            _ => {
                return Err(Error::Parse {
                    position,
                    found: ch,
                })
            }
        };
        match alphabet {
            None => alphabet = Some(kind),
            Some(a) if a != kind => {
                return Err(Error::Parse {
                    position,
                    found: ch,
                })
            }
            _ => {}
        }
        steps.push(step);
    }
    Ok(LatticePath::new(steps))
}

impl FromStr for LatticePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

impl Serialize for LatticePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bits())
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_path(&s).map_err(serde::de::Error::custom)
    }
}

/// Statistics of one path. `h_minus`/`h_plus` are only present for nonempty
/// Catalan paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStats {
    pub maj: u64,
    pub des: u64,
    pub height: i64,
    pub h_minus: Option<i64>,
    pub h_plus: Option<i64>,
    pub end_level: i64,
    pub min_level: i64,
}

impl PathStats {
    pub fn maj_minus_des(&self) -> u64 {
        self.maj - self.des
    }
}
