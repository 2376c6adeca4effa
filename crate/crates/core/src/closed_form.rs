//! Closed-form level counts and vertex counts for Fibonacci trees, the
//! Fibonacci evaluation methods built on them, the double-precision Binet
//! forms with explicit validity domains, and exact reference oracles.
//!
//! Indexing convention throughout: `f(0) = f(1) = 1`, `f(n) = f(n-1) + f(n-2)`.
//! This is the standard sequence shifted by one, `f(n) = F(n+1)` with
//! `F(0) = 0, F(1) = 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::FromPrimitive;

use crate::combinatorics::binomial_row;
use crate::num::Count;
use crate::tree::{FibTree, DEFAULT_HEIGHT_CAP};
use crate::{Error, Index, Natural};

/// Largest `n` accepted by the double-precision Binet forms.
///
/// Both forms are swept against the exact recurrence by the test suite; they
/// reproduce it on all of `0..=69`, and the first real divergence of each
/// form (just past the guard; see [`binet_round_divergence`] and
/// [`binet_subtract_divergence`]) is located empirically rather than assumed.
pub const BINET_MAX_N: Index = 69;

/// A Fibonacci evaluation method, as named on the command line and in
/// benchmark and verification output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// `f(n) = 1 +` the double binomial sum over tree levels; depends on `n`
    /// alone.
    ClosedForm,
    /// Iterative two-accumulator recurrence; exact, O(n) additions.
    Recurrence,
    /// Doubling identities on the standard-indexed pair; exact, O(log n)
    /// multiplications. Serves as the verification oracle.
    FastDoubling,
    /// Subtraction Binet form evaluated in double precision; domain-limited.
    BinetSubtract,
    /// Rounding Binet form evaluated in double precision; domain-limited.
    BinetRound,
    /// Build the tree of height `n - 2` and count its vertices by traversal.
    TreeCount,
}

impl Method {
    /// Every method, in tag order.
    pub const ALL: [Method; 6] = [
        Method::BinetRound,
        Method::BinetSubtract,
        Method::ClosedForm,
        Method::FastDoubling,
        Method::Recurrence,
        Method::TreeCount,
    ];

    /// Stable identifier used by the CLI, CSV output, and verify reports.
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Recurrence => "recurrence",
            Method::FastDoubling => "fast-doubling",
            Method::BinetSubtract => "binet-subtract",
            Method::BinetRound => "binet-round",
            Method::TreeCount => "tree-count",
        }
    }

    /// Largest `n` the method accepts, or `None` when unbounded.
    ///
    /// The float forms stop at [`BINET_MAX_N`]; counting a real tree needs
    /// `n - 2` within the height cap.
    pub fn domain_max(self, height_cap: Index) -> Option<Index> {
        match self {
            Method::BinetSubtract | Method::BinetRound => Some(BINET_MAX_N),
            Method::TreeCount => Some(height_cap.saturating_add(2)),
            Method::ClosedForm | Method::Recurrence | Method::FastDoubling => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<_> = Method::ALL.iter().map(|m| m.tag()).collect();
                format!("unknown method {s:?} (expected one of: {})", tags.join(", "))
            })
    }
}

/// Number of vertices at level `k` of the Fibonacci tree of height `h`:
///
/// ```text
/// N(h, k) = sum_{i=0}^{h-k} C(k, h-k-i)
/// ```
///
/// Substituting `m = h-k-i`, this is the Pascal-row prefix sum
/// `sum_{m=0}^{h-k} C(k, m)`; terms past `m = min(k, h-k)` vanish, so the
/// row is clamped there and each level costs O(min(k, h-k)) scalar ops.
pub fn level_count<T: Count>(h: Index, k: Index) -> Result<T, Error> {
    if k > h {
        return Err(Error::InvalidLevel { h, k });
    }
    let m_max = k.min(h - k);
    Ok(binomial_row::<T>(k, m_max)
        .into_iter()
        .fold(T::zero(), |acc, c| acc + c))
}

/// Total vertex count of the Fibonacci tree of height `h`, summed level by
/// level from the closed form: `sum_{k=0}^{h} N(h, k)`.
pub fn vertex_count<T: Count>(h: Index) -> T {
    (0..=h).fold(T::zero(), |acc, k| {
        acc + level_count::<T>(h, k).expect("k <= h")
    })
}

/// Closed-form `f(n)`: one more than the vertex count of the tree of height
/// `n - 2`, which depends on `n` alone and on no earlier sequence values.
///
/// The tree identity covers `n >= 2`; `f(0)` and `f(1)` are the base values,
/// both 1, so the function is total.
pub fn fib_closed<T: Count>(n: Index) -> T {
    if n < 2 {
        T::one()
    } else {
        T::one() + vertex_count::<T>(n - 2)
    }
}

/// Exact `f(n)` by the defining recurrence, two accumulators, O(n) additions.
pub fn fib_recurrence<T: Count>(n: Index) -> T {
    let mut prev = T::one(); // f(0)
    let mut curr = T::one(); // f(1)
    for _ in 0..n {
        let next = prev + &curr;
        prev = std::mem::replace(&mut curr, next);
    }
    prev
}

/// Exact `f(n)` in O(log n) bigint multiplications via the doubling
/// identities `F(2m) = F(m) * (2F(m+1) - F(m))` and
/// `F(2m+1) = F(m)^2 + F(m+1)^2` on the standard indexing, shifted one place
/// at the boundary so the result is `f(n) = F(n+1)`.
pub fn fib_fast_doubling<T: Count>(n: Index) -> T {
    doubling_pair::<T>(u64::from(n) + 1).0
}

// Returns (F(m), F(m+1)) on standard indexing, F(0) = 0.
fn doubling_pair<T: Count>(m: u64) -> (T, T) {
    if m == 0 {
        return (T::zero(), T::one());
    }
    let (a, b) = doubling_pair::<T>(m >> 1);
    // 2*F(j+1) >= F(j), so the subtraction never underflows.
    let twice_b_minus_a = (b.clone() + &b) - &a;
    let low = a.clone() * &twice_b_minus_a;
    let high = a.clone() * &a + b.clone() * &b;
    if m & 1 == 0 {
        (low, high)
    } else {
        let next = low + &high;
        (high, next)
    }
}

/// The subtraction Binet form evaluated in double precision:
///
/// ```text
/// ((1+sqrt 5)^e - (1-sqrt 5)^e) / (2^e * sqrt 5)   with e = n + 1
/// ```
///
/// As written with exponent `n` this produces the standard sequence starting
/// at 0; the `+1` shift aligns it with `f(0) = 1`. Guarded to
/// `n <= BINET_MAX_N`, where double precision still rounds to the exact
/// value.
pub fn binet_subtract(n: Index) -> Result<Natural, Error> {
    if n > BINET_MAX_N {
        return Err(Error::FloatDomainExceeded {
            n,
            max: BINET_MAX_N,
        });
    }
    // Within the guard the value is far below 2^53, so u64 holds it exactly.
    Ok(Natural::from(binet_subtract_f64(n).round() as u64))
}

/// The rounding Binet form evaluated in double precision:
///
/// ```text
/// round( (5+sqrt 5)/10 * ((1+sqrt 5)/2)^n )
/// ```
///
/// This form already matches `f(0) = 1` as written. Rounding is half away
/// from zero (the value never lands on a half-integer, but the mode is fixed
/// for determinism). Guarded to `n <= BINET_MAX_N`.
pub fn binet_round(n: Index) -> Result<Natural, Error> {
    if n > BINET_MAX_N {
        return Err(Error::FloatDomainExceeded {
            n,
            max: BINET_MAX_N,
        });
    }
    Ok(Natural::from(binet_round_f64(n).round() as u64))
}

/// Unguarded double-precision evaluation of the subtraction form, for
/// sweeping past the domain guard.
pub fn binet_subtract_f64(n: Index) -> f64 {
    let s5 = 5f64.sqrt();
    let e = n as i32 + 1;
    ((1.0 + s5).powi(e) - (1.0 - s5).powi(e)) / (2f64.powi(e) * s5)
}

/// Unguarded double-precision evaluation of the rounding form.
pub fn binet_round_f64(n: Index) -> f64 {
    let s5 = 5f64.sqrt();
    (5.0 + s5) / 10.0 * ((1.0 + s5) / 2.0).powi(n as i32)
}

/// Smallest `n` at which the rounded subtraction form stops reproducing the
/// exact sequence on this machine.
pub fn binet_subtract_divergence() -> Index {
    first_divergence(binet_subtract_f64)
}

/// Smallest `n` at which the rounded rounding form stops reproducing the
/// exact sequence on this machine.
pub fn binet_round_divergence() -> Index {
    first_divergence(binet_round_f64)
}

fn first_divergence(value: impl Fn(Index) -> f64) -> Index {
    (0..)
        .find(|&n| {
            let rounded = value(n).round();
            Natural::from_f64(rounded) != Some(fib_recurrence::<Natural>(n))
        })
        .expect("double precision diverges at some n")
}

/// Evaluate `f(n)` by `method` under the default height cap.
pub fn fib(method: Method, n: Index) -> Result<Natural, Error> {
    fib_with_height_cap(method, n, DEFAULT_HEIGHT_CAP)
}

/// Evaluate `f(n)` by `method`; `height_cap` bounds the tree-count method.
///
/// Errors propagate each method's own domain guard and nothing else.
pub fn fib_with_height_cap(
    method: Method,
    n: Index,
    height_cap: Index,
) -> Result<Natural, Error> {
    match method {
        Method::ClosedForm => Ok(fib_closed(n)),
        Method::Recurrence => Ok(fib_recurrence(n)),
        Method::FastDoubling => Ok(fib_fast_doubling(n)),
        Method::BinetSubtract => binet_subtract(n),
        Method::BinetRound => binet_round(n),
        Method::TreeCount => {
            if n < 2 {
                return Ok(Natural::from(1u32));
            }
            let tree = FibTree::build_with_cap(n - 2, height_cap)?;
            Ok(tree.vertex_count::<Natural>() + 1u32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use num_traits::{One, Pow};
    use proptest::prelude::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn level_zero_has_one_vertex() {
        for h in [0u32, 1, 5, 17, 64, 300] {
            assert_eq!(level_count::<Natural>(h, 0).unwrap(), Natural::one());
        }
    }

    #[test]
    fn level_counts_match_small_trees() {
        assert_eq!(level_count::<Natural>(3, 2).unwrap(), nat(3));
        let t = FibTree::build(3).unwrap();
        assert_eq!(t.level_profile::<Natural>().counts[2], nat(3));

        assert_eq!(level_count::<Natural>(10, 4).unwrap(), nat(16));
        let t = FibTree::build(10).unwrap();
        assert_eq!(t.level_profile::<Natural>().counts[4], nat(16));
    }

    #[test]
    fn level_above_height_is_rejected() {
        assert_eq!(
            level_count::<Natural>(3, 4).unwrap_err(),
            Error::InvalidLevel { h: 3, k: 4 }
        );
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(vertex_count::<Natural>(0), nat(1));
        assert_eq!(vertex_count::<Natural>(3), nat(7));
        assert_eq!(vertex_count::<Natural>(20), nat(28656));
    }

    #[test]
    fn closed_form_worked_examples() {
        assert_eq!(fib_closed::<Natural>(4), nat(5));
        assert_eq!(fib_closed::<Natural>(5), nat(8));
        assert_eq!(fib_closed::<Natural>(0), nat(1));
        assert_eq!(fib_closed::<Natural>(1), nat(1));
    }

    #[test]
    fn recurrence_base_and_small_values() {
        assert_eq!(fib_recurrence::<Natural>(0), nat(1));
        assert_eq!(fib_recurrence::<Natural>(1), nat(1));
        assert_eq!(fib_recurrence::<Natural>(5), nat(8));
    }

    #[test]
    fn recurrence_at_100_has_21_digits() {
        let v = fib_recurrence::<Natural>(100);
        assert_eq!(v.to_string().len(), 21);
        assert_eq!(v, fib_fast_doubling::<Natural>(100));
    }

    #[test]
    fn fast_doubling_matches_recurrence_up_to_2000() {
        let mut prev = Natural::one();
        let mut curr = Natural::one();
        for n in 0..=2000u32 {
            assert_eq!(fib_fast_doubling::<Natural>(n), prev, "n={n}");
            let next = &prev + &curr;
            prev = std::mem::replace(&mut curr, next);
        }
    }

    #[test]
    fn lemma_recurrence_holds_up_to_64() {
        for h in 2..=64u32 {
            for k in 1..h {
                let lhs = level_count::<Natural>(h, k).unwrap();
                let rhs = level_count::<Natural>(h - 1, k - 1).unwrap()
                    + level_count::<Natural>(h - 2, k - 1).unwrap();
                assert_eq!(lhs, rhs, "recurrence at h={h}, k={k}");
            }
            // Boundary k = h: the shorter subtree contributes no such level.
            assert_eq!(
                level_count::<Natural>(h, h).unwrap(),
                level_count::<Natural>(h - 1, h - 1).unwrap()
            );
        }
    }

    #[test]
    fn complete_top_levels_are_powers_of_two() {
        for h in 0..=64u32 {
            // k <= h/2 is exactly the k <= h-k range.
            for k in 0..=h / 2 {
                assert_eq!(
                    level_count::<Natural>(h, k).unwrap(),
                    Natural::from(2u32).pow(k),
                    "2^k at h={h}, k={k}"
                );
            }
        }
    }

    #[test]
    fn deepest_level_has_one_vertex() {
        for h in 0..=64u32 {
            assert_eq!(level_count::<Natural>(h, h).unwrap(), Natural::one());
        }
    }

    #[test]
    fn level_sums_equal_shifted_fibonacci() {
        for h in 0..=120u32 {
            assert_eq!(
                vertex_count::<Natural>(h),
                fib_fast_doubling::<Natural>(h + 2) - 1u32,
                "level sum at h={h}"
            );
        }
    }

    #[test]
    fn methods_agree_up_to_100() {
        for n in 0..=100u32 {
            let exact = fib_recurrence::<Natural>(n);
            assert_eq!(fib_closed::<Natural>(n), exact, "closed form at n={n}");
            assert_eq!(fib_fast_doubling::<Natural>(n), exact, "doubling at n={n}");
        }
    }

    #[test]
    fn monotone_growth_from_one() {
        let mut prev = fib_closed::<Natural>(1);
        for n in 2..=80u32 {
            let next = fib_closed::<Natural>(n);
            assert!(next > prev, "f({n}) > f({})", n - 1);
            prev = next;
        }
    }

    #[test]
    fn binet_subtract_examples() {
        assert_eq!(binet_subtract(1).unwrap(), nat(1));
        assert_eq!(binet_subtract(5).unwrap(), nat(8));
        assert_eq!(binet_subtract(69).unwrap(), fib_recurrence::<Natural>(69));
    }

    #[test]
    fn binet_round_examples() {
        assert_eq!(binet_round(0).unwrap(), nat(1));
        assert_eq!(binet_round(4).unwrap(), nat(5));
    }

    #[test]
    fn binet_forms_match_recurrence_across_domain() {
        for n in 0..=BINET_MAX_N {
            let exact = fib_recurrence::<Natural>(n);
            assert_eq!(binet_subtract(n).unwrap(), exact, "subtract form at n={n}");
            assert_eq!(binet_round(n).unwrap(), exact, "round form at n={n}");
        }
    }

    #[test]
    fn binet_domain_guard() {
        assert_eq!(
            binet_subtract(BINET_MAX_N + 1).unwrap_err(),
            Error::FloatDomainExceeded { n: 70, max: 69 }
        );
        assert!(binet_round(200).is_err());
    }

    #[test]
    fn binet_divergences_sit_past_the_guard() {
        let subtract = binet_subtract_divergence();
        let round = binet_round_divergence();
        println!("first divergence: binet-subtract at n={subtract}, binet-round at n={round}");
        assert!(subtract > BINET_MAX_N);
        assert!(round > BINET_MAX_N);
    }

    #[test]
    fn dispatch_covers_every_method() {
        assert_eq!(fib(Method::ClosedForm, 4).unwrap(), nat(5));
        assert_eq!(fib(Method::TreeCount, 5).unwrap(), nat(8));
        assert_eq!(fib(Method::TreeCount, 0).unwrap(), nat(1));
        assert_eq!(fib(Method::TreeCount, 1).unwrap(), nat(1));
        let big = fib(Method::FastDoubling, 300).unwrap();
        assert_eq!(big, fib(Method::ClosedForm, 300).unwrap());
        assert_eq!(big.to_string().len(), 63);
        assert!(fib(Method::BinetRound, 70).is_err());
        assert!(matches!(
            fib(Method::TreeCount, DEFAULT_HEIGHT_CAP + 3),
            Err(Error::HeightCapExceeded { .. })
        ));
        assert!(fib_with_height_cap(Method::TreeCount, 12, 10).is_ok());
    }

    #[test]
    fn method_tags_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("fibonacci".parse::<Method>().is_err());
        let mut tags: Vec<_> = Method::ALL.iter().map(|m| m.tag()).collect();
        tags.sort_unstable();
        let in_order: Vec<_> = Method::ALL.iter().map(|m| m.tag()).collect();
        assert_eq!(tags, in_order, "ALL is kept in tag order");
    }

    proptest! {
        // Route independence: the clamped row-sum evaluation must equal the
        // plain sum of binomials it abbreviates.
        #[test]
        fn prop_level_count_equals_direct_sum(h in 0u32..96, k in 0u32..96) {
            prop_assume!(k <= h);
            let direct = (0..=(h - k))
                .map(|i| binomial::<Natural>(i64::from(k), i64::from(h - k - i)))
                .fold(Natural::default(), |a, c| a + c);
            prop_assert_eq!(level_count::<Natural>(h, k).unwrap(), direct);
        }

        #[test]
        fn prop_fast_doubling_equals_recurrence(n in 0u32..600) {
            prop_assert_eq!(
                fib_fast_doubling::<Natural>(n),
                fib_recurrence::<Natural>(n)
            );
        }
    }
}
