//! Forward and inverse maps for the four path bijections, with traces that
//! record the landmarks each map uses.
//!
//! * `psi`: raise the down step after the right-most maximum; the height
//!   cancellation between two families of unrestricted paths.
//! * `phi`: reflect and prepend an up step; lands in the ballot family.
//! * `f`: on `BallotStar(n)`, raise the down step after the right-most
//!   maximum; lands on Catalan paths of height at least 2.
//! * `g`: on `BallotStarStar(n)`, the two-case surgery around the first
//!   visit to level -1; lands on Catalan paths outside `Omega(n)`.
//!
//! Every map checks its domain first and does nothing on failure.

mod ballot;
mod catalan;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::paths::{LatticePath, Step};

pub use ballot::{phi, phi_inv, psi, psi_inv};
pub use catalan::{f, f_inv, g, g_inv};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bijection {
    Psi,
    PsiInv,
    Phi,
    PhiInv,
    F,
    FInv,
    G,
    GInv,
}

impl Bijection {
    pub const ALL: [Bijection; 8] = [
        Bijection::Psi,
        Bijection::PsiInv,
        Bijection::Phi,
        Bijection::PhiInv,
        Bijection::F,
        Bijection::FInv,
        Bijection::G,
        Bijection::GInv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bijection::Psi => "psi",
            Bijection::PsiInv => "psi-inv",
            Bijection::Phi => "phi",
            Bijection::PhiInv => "phi-inv",
            Bijection::F => "f",
            Bijection::FInv => "f-inv",
            Bijection::G => "g",
            Bijection::GInv => "g-inv",
        }
    }

    /// Applies the map, reading `n` (and `r`) off the input's shape.
    pub fn apply(self, p: &LatticePath) -> Result<LatticePath> {
        trace(self, p).map(|t| t.output)
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bijection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Bijection::ALL
            .into_iter()
            .find(|b| b.name() == s.to_ascii_lowercase().replace('_', "-"))
            .ok_or_else(|| {
                Error::Syntax(format!(
                    "unknown bijection {s:?} (psi, psi-inv, phi, phi-inv, f, f-inv, g, g-inv)"
                ))
            })
    }
}

impl Serialize for Bijection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Which of the two constructions `g` (or `g-inv`) used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// The first visit to level -1 is followed by a down step.
    Case1,
    /// The first visit to level -1 is followed by an up step.
    Case2,
}

/// Which path of a trace a landmark index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathRole {
    Input,
    Intermediate,
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Point(usize),
    /// Points `start..end`; covers steps `start+1 ..= end`.
    Range([usize; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Landmark {
    pub on: PathRole,
    #[serde(flatten)]
    pub at: Position,
}

/// `stats(input) - stats(output)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StatDelta {
    pub maj: i64,
    pub des: i64,
}

impl StatDelta {
    pub fn between(input: &LatticePath, output: &LatticePath) -> Self {
        StatDelta {
            maj: input.maj() as i64 - output.maj() as i64,
            des: input.des() as i64 - output.des() as i64,
        }
    }

    pub fn maj_minus_des(&self) -> i64 {
        self.maj - self.des
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionTrace {
    pub name: Bijection,
    pub input: LatticePath,
    pub output: LatticePath,
    /// The path between the two surgeries of `g`/`g-inv`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<LatticePath>,
    #[serde(rename = "case")]
    pub case_taken: Option<Case>,
    pub landmarks: BTreeMap<String, Landmark>,
    pub stat_delta: StatDelta,
}

impl BijectionTrace {
    fn new(name: Bijection, input: &LatticePath, output: LatticePath) -> Self {
        BijectionTrace {
            name,
            stat_delta: StatDelta::between(input, &output),
            input: input.clone(),
            output,
            intermediate: None,
            case_taken: None,
            landmarks: BTreeMap::new(),
        }
    }

    fn mark(&mut self, label: &str, on: PathRole, point: usize) -> &mut Self {
        self.landmarks.insert(
            label.to_string(),
            Landmark {
                on,
                at: Position::Point(point),
            },
        );
        self
    }

    fn mark_range(&mut self, label: &str, on: PathRole, range: Range<usize>) -> &mut Self {
        self.landmarks.insert(
            label.to_string(),
            Landmark {
                on,
                at: Position::Range([range.start, range.end]),
            },
        );
        self
    }

    /// Point index of a single-point landmark.
    pub fn point(&self, label: &str) -> Option<usize> {
        match self.landmarks.get(label)?.at {
            Position::Point(p) => Some(p),
            Position::Range(_) => None,
        }
    }

    /// Point range of a range landmark.
    pub fn range(&self, label: &str) -> Option<Range<usize>> {
        match self.landmarks.get(label)?.at {
            Position::Range([a, b]) => Some(a..b),
            Position::Point(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeDirection {
    /// The wedge ends at the anchor.
    Before,
    /// The wedge starts at the anchor.
    After,
}

/// The longest down wedge sequence (down, up, down, up, ..., up) ending or
/// starting at `anchor`, as a range of points. Empty ranges are allowed.
pub fn find_down_wedge(p: &LatticePath, anchor: usize, direction: WedgeDirection) -> Range<usize> {
    match direction {
        WedgeDirection::Before => {
            let mut start = anchor;
            while start >= 2
                && p.step_into(start) == Some(Step::Up)
                && p.step_into(start - 1) == Some(Step::Down)
            {
                start -= 2;
            }
            start..anchor
        }
        WedgeDirection::After => {
            let mut end = anchor;
            while p.step_out_of(end) == Some(Step::Down) && p.step_out_of(end + 1) == Some(Step::Up)
            {
                end += 2;
            }
            anchor..end
        }
    }
}

fn even_half_length(p: &LatticePath, what: &str) -> Result<u32> {
    if !p.len().is_multiple_of(2) || p.is_empty() {
        return Err(domain(format!(
            "{what} needs a nonempty path of even length, got {p} (length {})",
            p.len()
        )));
    }
    Ok((p.len() / 2) as u32)
}

/// `(n, r)` with `ups = n + r - 1 + shift`, `downs = n - r - shift`.
fn ballot_params(p: &LatticePath, shift: i64, what: &str) -> Result<(u32, u32)> {
    let (a, b) = (p.ups() as i64, p.downs() as i64);
    let twice_r = a - b + 1 - 2 * shift;
    if (a + b) % 2 == 0 || twice_r < 2 {
        return Err(domain(format!(
            "{what} cannot read (n, r) off {p}: {a} up and {b} down steps"
        )));
    }
    Ok((((a + b + 1) / 2) as u32, (twice_r / 2) as u32))
}

/// Applies `name` to `p` while recording landmarks, case and statistic change.
pub fn trace(name: Bijection, p: &LatticePath) -> Result<BijectionTrace> {
    match name {
        Bijection::Psi => {
            let (n, r) = ballot_params(p, 0, "psi")?;
            ballot::trace_psi(p, n, r)
        }
        Bijection::PsiInv => {
            let (n, r) = ballot_params(p, 1, "psi-inv")?;
            ballot::trace_psi_inv(p, n, r)
        }
        Bijection::Phi => {
            let (n, r) = ballot_params(p, 0, "phi")?;
            ballot::trace_phi(p, n, r)
        }
        Bijection::PhiInv => {
            let n = even_half_length(p, "phi-inv")?;
            let end = p.end_level();
            if end > 0 || end % 2 != 0 {
                return Err(domain(format!(
                    "phi-inv needs a ballot path ending at an even level <= 0, {p} ends at {end}"
                )));
            }
            ballot::trace_phi_inv(p, n, ((2 - end) / 2) as u32)
        }
        Bijection::F => catalan::trace_f(p, even_half_length(p, "f")?),
        Bijection::FInv => catalan::trace_f_inv(p, even_half_length(p, "f-inv")?),
        Bijection::G => catalan::trace_g(p, even_half_length(p, "g")?),
        Bijection::GInv => catalan::trace_g_inv(p, even_half_length(p, "g-inv")?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::parse_path;

    fn path(s: &str) -> LatticePath {
        parse_path(s).unwrap()
    }

    #[test]
    fn wedges() {
        let p = path("ududd");
        assert_eq!(find_down_wedge(&p, 4, WedgeDirection::Before), 4..4);
        assert_eq!(find_down_wedge(&p, 3, WedgeDirection::Before), 1..3);
        assert_eq!(find_down_wedge(&p, 1, WedgeDirection::After), 1..3);
        assert_eq!(find_down_wedge(&p, 0, WedgeDirection::After), 0..0);
        let p = path("uududud");
        assert_eq!(find_down_wedge(&p, 2, WedgeDirection::After), 2..6);
        assert_eq!(find_down_wedge(&p, 6, WedgeDirection::Before), 2..6);
        for anchor in 0..=p.len() {
            for dir in [WedgeDirection::Before, WedgeDirection::After] {
                let w = find_down_wedge(&p, anchor, dir);
                assert_eq!(w.len() % 2, 0);
                let levels = p.levels();
                assert_eq!(levels[w.start], levels[w.end]);
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for b in Bijection::ALL {
            assert_eq!(b.name().parse::<Bijection>().unwrap(), b);
        }
        assert!("h".parse::<Bijection>().is_err());
    }
}
