use super::{Bijection, BijectionTrace, PathRole};
use crate::error::{domain, Error, Result};
use crate::paths::{FamilySpec, LatticePath, Step};

pub(super) fn trace_psi(p: &LatticePath, n: u32, r: u32) -> Result<BijectionTrace> {
    FamilySpec::HeightAbove(n, r).check_membership(p)?;
    let top = p.right_most_maximum();
    // The path ends at 2r - 1 below its height, so a down step follows R.
    debug_assert_eq!(p.step_out_of(top), Some(Step::Down));
    let out = p.with_flipped_step(top + 1);
    if out.left_most_maximum() != top + 1 {
        return Err(Error::InvariantViolation(format!(
            "psi({p}) = {out}: raised point is not the left-most maximum"
        )));
    }
    let mut t = BijectionTrace::new(Bijection::Psi, p, out);
    t.mark("R", PathRole::Input, top)
        .mark("L", PathRole::Output, top + 1);
    Ok(t)
}

pub(super) fn trace_psi_inv(p: &LatticePath, n: u32, r: u32) -> Result<BijectionTrace> {
    if r < 1 || r >= n {
        return Err(domain(format!(
            "psi-inv needs 1 <= r < n, got n={n}, r={r}"
        )));
    }
    FamilySpec::AllPaths(n + r, n - r - 1).check_membership(p)?;
    let left = p.left_most_maximum();
    debug_assert_eq!(p.step_into(left), Some(Step::Up));
    let out = p.with_flipped_step(left);
    let mut t = BijectionTrace::new(Bijection::PsiInv, p, out);
    t.mark("L", PathRole::Input, left)
        .mark("R", PathRole::Output, left - 1);
    Ok(t)
}

pub(super) fn trace_phi(p: &LatticePath, n: u32, r: u32) -> Result<BijectionTrace> {
    FamilySpec::HeightAtMost(n, r).check_membership(p)?;
    let mut steps = Vec::with_capacity(p.len() + 1);
    steps.push(Step::Up);
    steps.extend(p.reflect().into_steps());
    Ok(BijectionTrace::new(
        Bijection::Phi,
        p,
        LatticePath::new(steps),
    ))
}

pub(super) fn trace_phi_inv(p: &LatticePath, n: u32, r: u32) -> Result<BijectionTrace> {
    FamilySpec::Ballot(n, r).check_membership(p)?;
    let out = LatticePath::new(p.steps()[1..].to_vec()).reflect();
    Ok(BijectionTrace::new(Bijection::PhiInv, p, out))
}

/// Raises the down step after the right-most maximum of a path in
/// `HeightAbove(n, r)`; the result lies in `AllPaths(n + r, n - r - 1)` and
/// keeps the descent set.
pub fn psi(p: &LatticePath, n: u32, r: u32) -> Result<LatticePath> {
    trace_psi(p, n, r).map(|t| t.output)
}

/// Lowers the up step into the left-most maximum.
pub fn psi_inv(p: &LatticePath, n: u32, r: u32) -> Result<LatticePath> {
    trace_psi_inv(p, n, r).map(|t| t.output)
}

/// Reflects a path of `HeightAtMost(n, r)` and prepends an up step, landing
/// in `Ballot(n, r)`.
pub fn phi(p: &LatticePath, n: u32, r: u32) -> Result<LatticePath> {
    trace_phi(p, n, r).map(|t| t.output)
}

pub fn phi_inv(p: &LatticePath, n: u32, r: u32) -> Result<LatticePath> {
    trace_phi_inv(p, n, r).map(|t| t.output)
}
