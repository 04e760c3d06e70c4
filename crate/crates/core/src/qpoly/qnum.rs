//! Closed-form q-quantities: q-integers, q-factorials, gaussian binomials,
//! the super Catalan polynomials `S_q`, `T_q` and the q-ballot numbers `B_q`.

use super::QPoly;
use crate::error::{domain, Error, Result};

/// `[r]_q = 1 + q + ... + q^(r-1)`; `[0]_q = 0`.
pub fn q_int(r: u32) -> QPoly {
    QPoly::from_i64s(0, &vec![1; r as usize])
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q`; `[0]!_q = 1`.
pub fn q_factorial(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, r| acc.mul_q_int(r))
}

/// `prod [a]_q for a in num / prod [b]_q for b in den`, with equal factors
/// cancelled first and the rest removed one q-integer at a time by exact
/// division.
fn q_int_ratio(mut num: Vec<u32>, mut den: Vec<u32>) -> Result<QPoly> {
    num.sort_unstable();
    den.sort_unstable();
    let (mut i, mut j) = (0, 0);
    let (mut kept_num, mut kept_den) = (Vec::new(), Vec::new());
    while i < num.len() && j < den.len() {
        match num[i].cmp(&den[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                kept_num.push(num[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                kept_den.push(den[j]);
                j += 1;
            }
        }
    }
    kept_num.extend_from_slice(&num[i..]);
    kept_den.extend_from_slice(&den[j..]);

    let mut acc = kept_num
        .iter()
        .fold(QPoly::one(), |acc, &r| acc.mul_q_int(r));
    for d in kept_den.into_iter().rev() {
        acc = acc.exact_div(&q_int(d))?;
    }
    Ok(acc)
}

fn expect_polynomial(what: &str, r: Result<QPoly>) -> Result<QPoly> {
    r.map_err(|e| match e {
        Error::NotDivisible { remainder } => Error::InvariantViolation(format!(
            "{what} is not a polynomial (remainder {remainder})"
        )),
        other => other,
    })
}

/// Gaussian binomial `[n choose k]_q`; zero when `k < 0` or `k > n`.
pub fn gaussian_binomial(n: u32, k: i64) -> QPoly {
    if k < 0 || k > n as i64 {
        return QPoly::zero();
    }
    let k = k as u32;
    q_int_ratio((1..=n).collect(), (1..=k).chain(1..=n - k).collect())
        .expect("gaussian binomials are polynomials")
}

/// `S_q(m,n) = [2m]! [2n]! / ([m]! [n]! [m+n]!)`.
pub fn super_catalan_q(m: u32, n: u32) -> Result<QPoly> {
    let num = (1..=2 * m).chain(1..=2 * n).collect();
    let den = (1..=m).chain(1..=n).chain(1..=m + n).collect();
    expect_polynomial(&format!("S_q({m},{n})"), q_int_ratio(num, den))
}

/// `T_q(m,n) = S_q(m,n) / (1 + q^n)`, defined for `n >= 1`.
pub fn super_catalan_t_q(m: u32, n: u32) -> Result<QPoly> {
    if n == 0 {
        return Err(domain("T_q(m,n) requires n >= 1 (1 + q^0 = 2)"));
    }
    let s = super_catalan_q(m, n)?;
    let divisor = &QPoly::one() + &QPoly::monomial(1, n as i64);
    expect_polynomial(&format!("T_q({m},{n})"), s.exact_div(&divisor))
}

fn check_ballot_domain(n: u32, r: u32) -> Result<()> {
    if r < 1 || r > n {
        return Err(domain(format!(
            "B_q(n,r) requires 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// `B_q(n,r) = [2n-1]! [2r] / ([n+r]! [n-r]!)` for `1 <= r <= n`.
pub fn ballot_q(n: u32, r: u32) -> Result<QPoly> {
    check_ballot_domain(n, r)?;
    let num = (1..2 * n).chain(std::iter::once(2 * r)).collect();
    let den = (1..=n + r).chain(1..=n - r).collect();
    expect_polynomial(&format!("B_q({n},{r})"), q_int_ratio(num, den))
}

/// `q^-(n-r) ([2n-1 choose n+r-1]_q - [2n-1 choose n+r]_q)`.
pub fn ballot_q_binomial_form(n: u32, r: u32) -> Result<QPoly> {
    check_ballot_domain(n, r)?;
    let top = 2 * n - 1;
    let k = (n + r) as i64;
    let diff = &gaussian_binomial(top, k - 1) - &gaussian_binomial(top, k);
    Ok(diff.shift(-((n - r) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(0, c)
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0), QPoly::zero());
        assert_eq!(q_int(1), QPoly::one());
        assert_eq!(q_int(3), p(&[1, 1, 1]));
    }

    #[test]
    fn q_factorial_values() {
        assert_eq!(q_factorial(0), QPoly::one());
        assert_eq!(q_factorial(2), p(&[1, 1]));
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1), p(&[1, 1]));
        assert_eq!(gaussian_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert_eq!(gaussian_binomial(3, 5), QPoly::zero());
        assert_eq!(gaussian_binomial(3, -1), QPoly::zero());
        assert_eq!(gaussian_binomial(0, 0), QPoly::one());
    }

    #[test]
    fn super_catalan_values() {
        assert_eq!(super_catalan_q(0, 1).unwrap(), p(&[1, 1]));
        assert_eq!(super_catalan_q(1, 1).unwrap(), p(&[1, 1]));
        // (1 + q^2)(1 + q + q^2)
        assert_eq!(super_catalan_q(2, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(super_catalan_q(0, 0).unwrap(), QPoly::one());
    }

    #[test]
    fn t_q_values() {
        assert_eq!(super_catalan_t_q(1, 1).unwrap(), QPoly::one());
        assert_eq!(super_catalan_t_q(1, 2).unwrap(), p(&[1, 1]));
        assert_eq!(super_catalan_t_q(2, 2).unwrap(), p(&[1, 1, 1]));
        assert!(matches!(super_catalan_t_q(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn ballot_values() {
        assert_eq!(ballot_q(1, 1).unwrap(), QPoly::one());
        assert_eq!(ballot_q(2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(ballot_q(2, 2).unwrap(), QPoly::one());
        assert!(matches!(ballot_q(2, 3), Err(Error::Domain(_))));
        assert!(matches!(ballot_q(2, 0), Err(Error::Domain(_))));
        assert!(matches!(
            ballot_q_binomial_form(0, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ballot_closed_forms_agree() {
        for n in 1..=12 {
            for r in 1..=n {
                assert_eq!(
                    ballot_q(n, r).unwrap(),
                    ballot_q_binomial_form(n, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn super_catalan_symmetric_and_nonnegative() {
        for m in 0..=10 {
            for n in 0..=10 {
                let s = super_catalan_q(m, n).unwrap();
                assert_eq!(s, super_catalan_q(n, m).unwrap());
                assert!(s.is_nonnegative());
            }
        }
    }

    #[test]
    fn s_eval_matches_t_eval_times_two() {
        for m in 1..=8 {
            for n in 1..=8 {
                let s = super_catalan_q(m, n).unwrap().eval_at_one();
                let t = super_catalan_t_q(m, n).unwrap().eval_at_one();
                assert_eq!(s, t * 2);
            }
        }
    }

    #[test]
    fn eval_at_one_recovers_integers() {
        assert_eq!(super_catalan_q(2, 2).unwrap().eval_at_one(), 6.into());
    }
}
