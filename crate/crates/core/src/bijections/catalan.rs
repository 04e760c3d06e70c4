use super::{find_down_wedge, Bijection, BijectionTrace, Case, PathRole, WedgeDirection};
use crate::error::{domain, Error, Result};
use crate::paths::{FamilySpec, LatticePath, Step};

fn broken(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

pub(super) fn trace_f(p: &LatticePath, n: u32) -> Result<BijectionTrace> {
    FamilySpec::BallotStar(n).check_membership(p)?;
    let top = p.right_most_maximum();
    debug_assert_eq!(p.step_out_of(top), Some(Step::Down));
    let out = p.with_flipped_step(top + 1);
    let q = top + 1;
    if !out.is_catalan() || out.height() < 2 || out.left_most_maximum() != q {
        return Err(broken(format!("f({p}) = {out} is not a Catalan path of height >= 2 with Q = {q} its left-most maximum")));
    }
    let mut t = BijectionTrace::new(Bijection::F, p, out);
    t.mark("R", PathRole::Input, top)
        .mark("Q", PathRole::Output, q);
    Ok(t)
}

pub(super) fn trace_f_inv(p: &LatticePath, n: u32) -> Result<BijectionTrace> {
    FamilySpec::Catalan(n).check_membership(p)?;
    if p.height() < 2 {
        return Err(domain(format!(
            "path {p} is not in the image of f: height must be at least 2"
        )));
    }
    let q = p.left_most_maximum();
    let out = p.with_flipped_step(q);
    let mut t = BijectionTrace::new(Bijection::FInv, p, out);
    t.mark("Q", PathRole::Input, q)
        .mark("R", PathRole::Output, q - 1);
    Ok(t)
}

/// Checks the ballot path in the middle of `g`: never below 0, ends at 2,
/// `x` is its last level-one point before the right-most maximum, and the
/// part from `x` on climbs at least 4 higher than the part up to `x`.
fn check_middle(mid: &LatticePath, x: usize) -> Result<()> {
    if mid.min_level() < 0 || mid.end_level() != 2 {
        return Err(broken(format!(
            "intermediate {mid} is not a ballot path ending at level 2"
        )));
    }
    let found = mid.last_level_one_before_rmax()?;
    if found != x {
        return Err(broken(format!(
            "intermediate {mid}: last level-one point is {found}, expected {x}"
        )));
    }
    let levels = mid.levels();
    let before = *levels[..=x].iter().max().unwrap();
    let after = *levels[x..].iter().max().unwrap();
    if after < before + 4 {
        return Err(broken(format!(
            "intermediate {mid}: heights {before} / {after} differ by less than 4"
        )));
    }
    Ok(())
}

fn splice(parts: &[&[Step]]) -> LatticePath {
    LatticePath::new(parts.concat())
}

pub(super) fn trace_g(p: &LatticePath, n: u32) -> Result<BijectionTrace> {
    FamilySpec::BallotStarStar(n).check_membership(p)?;
    let top = p.right_most_maximum();
    let hit = p.first_hit(-1).filter(|&i| i < top).ok_or_else(|| {
        broken(format!(
            "{p} has no visit to -1 before its right-most maximum"
        ))
    })?;
    let steps = p.steps();

    let (case, mid, x_mid, marks): (Case, LatticePath, usize, Vec<(&str, usize)>) =
        if p.step_out_of(hit) == Some(Step::Down) {
            // M -> N -> Y are two down steps; both become up steps.
            let mut s = steps.to_vec();
            s[hit - 1] = Step::Up;
            s[hit] = Step::Up;
            let marks = vec![("M", hit - 1), ("N", hit), ("Y", hit + 1)];
            (Case::Case1, LatticePath::new(s), hit, marks)
        } else {
            // X -> N is two down steps; the wedge sigma ending at X moves to
            // just after N, then X -> N becomes two up steps.
            let x = hit - 2;
            let sigma = find_down_wedge(p, x, WedgeDirection::Before);
            let y = sigma.start;
            let mid = splice(&[
                &steps[..y],
                &[Step::Up, Step::Up],
                &steps[y..x],
                &steps[hit..],
            ]);
            let marks = vec![("N", hit), ("X", x), ("Y", y)];
            (Case::Case2, mid, y, marks)
        };
    check_middle(&mid, x_mid)?;

    let left = mid.left_most_maximum();
    let out = mid.with_flipped_step(left);
    let q = left - 1;
    if !out.is_catalan() || out.right_most_maximum() != q {
        return Err(broken(format!(
            "g({p}) = {out}: not Catalan with right-most maximum {q}"
        )));
    }
    let (lo, hi) = out.split_heights()?;
    if hi < lo + 3 {
        return Err(broken(format!(
            "g({p}) = {out} lies in Omega (h_- = {lo}, h_+ = {hi})"
        )));
    }

    let mut t = BijectionTrace::new(Bijection::G, p, out);
    t.case_taken = Some(case);
    t.mark("R", PathRole::Input, top);
    for (label, at) in marks {
        t.mark(label, PathRole::Input, at);
    }
    if case == Case::Case2 {
        let x = hit - 2;
        let y = find_down_wedge(p, x, WedgeDirection::Before).start;
        t.mark_range("sigma", PathRole::Input, y..x);
        t.mark_range("sigma_moved", PathRole::Intermediate, y + 2..x + 2);
    }
    t.mark("X'", PathRole::Intermediate, x_mid)
        .mark("L", PathRole::Intermediate, left)
        .mark("Q", PathRole::Output, q);
    t.intermediate = Some(mid);
    Ok(t)
}

pub(super) fn trace_g_inv(p: &LatticePath, n: u32) -> Result<BijectionTrace> {
    FamilySpec::Catalan(n).check_membership(p)?;
    let (lo, hi) = p.split_heights()?;
    if hi < lo + 3 {
        return Err(domain(format!(
            "path {p} is not in the image of g: needs h_+ >= h_- + 3, has h_- = {lo}, h_+ = {hi}"
        )));
    }
    let q = p.right_most_maximum();
    let mid = p.with_flipped_step(q + 1);
    let left = q + 1;
    let top = mid.right_most_maximum();
    let x = mid.last_level_one_before_rmax()?;
    check_middle(&mid, x)?;
    let steps = mid.steps();

    let mut t;
    if x >= 1 && mid.is_descent_point(x - 1) {
        // M -> X -> Y are two up steps; both become down steps.
        let mut s = steps.to_vec();
        s[x - 1] = Step::Down;
        s[x] = Step::Down;
        let out = LatticePath::new(s);
        t = BijectionTrace::new(Bijection::GInv, p, out);
        t.case_taken = Some(Case::Case1);
        t.mark("M", PathRole::Intermediate, x - 1)
            .mark("Y", PathRole::Intermediate, x + 1)
            .mark("N", PathRole::Output, x);
    } else {
        if mid.step_out_of(x) != Some(Step::Up) || mid.step_out_of(x + 1) != Some(Step::Up) {
            return Err(broken(format!(
                "intermediate {mid}: X = {x} is not followed by two up steps"
            )));
        }
        let y = x + 2;
        let sigma = find_down_wedge(&mid, y, WedgeDirection::After);
        let out = splice(&[
            &steps[..x],
            &steps[sigma.clone()],
            &[Step::Down, Step::Down],
            &steps[sigma.end..],
        ]);
        let n_point = x + sigma.len() + 2;
        t = BijectionTrace::new(Bijection::GInv, p, out);
        t.case_taken = Some(Case::Case2);
        t.mark("Y", PathRole::Intermediate, y)
            .mark_range("sigma", PathRole::Intermediate, sigma.clone())
            .mark_range("sigma_moved", PathRole::Output, x..x + sigma.len())
            .mark("N", PathRole::Output, n_point);
    }
    FamilySpec::BallotStarStar(n)
        .check_membership(&t.output)
        .map_err(|e| broken(format!("g-inv({p}) left the domain of g: {e}")))?;
    t.mark("Q", PathRole::Input, q)
        .mark("L", PathRole::Intermediate, left)
        .mark("R", PathRole::Intermediate, top)
        .mark("X", PathRole::Intermediate, x);
    t.intermediate = Some(mid);
    Ok(t)
}

/// Raises the down step after the right-most maximum of a `BallotStar(n)`
/// path, giving a Catalan path of height at least 2 with the same descents.
pub fn f(p: &LatticePath) -> Result<LatticePath> {
    Bijection::F.apply(p)
}

/// Lowers the up step into the left-most maximum of a Catalan path of
/// height at least 2.
pub fn f_inv(p: &LatticePath) -> Result<LatticePath> {
    Bijection::FInv.apply(p)
}

/// Maps `BallotStarStar(n)` onto the Catalan paths outside `Omega(n)`,
/// lowering `maj - des` by exactly 2.
pub fn g(p: &LatticePath) -> Result<LatticePath> {
    Bijection::G.apply(p)
}

/// Inverse of [`g`], choosing the case by whether the point before `X` is a
/// descent point.
pub fn g_inv(p: &LatticePath) -> Result<LatticePath> {
    Bijection::GInv.apply(p)
}
