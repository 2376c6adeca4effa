//! Exact binomial coefficients with the boundary conventions the level-count
//! algebra relies on: `C(n, r) = 0` whenever `r < 0`, `n < 0`, or `r > n`.

use crate::num::Count;
use crate::Index;

/// Binomial coefficient `C(n, r)`, total over signed arguments.
///
/// Out-of-range arguments (`r < 0`, `n < 0`, or `r > n`) yield 0 instead of
/// an error; the level-count recurrence leans on terms like `C(k-1, -1)`
/// vanishing.
pub fn binomial<T: Count>(n: i64, r: i64) -> T {
    if r < 0 || n < 0 || r > n {
        return T::zero();
    }
    let (n, r) = (n as u64, r as u64);
    let r = r.min(n - r); // C(n, r) = C(n, n - r)
    let mut acc = T::one();
    for m in 1..=r {
        // C(n, m) = C(n, m-1) * (n - m + 1) / m; the division is exact at
        // every step.
        acc = acc * from_u64::<T>(n - m + 1) / from_u64::<T>(m);
    }
    acc
}

/// The prefix `[C(k, 0), C(k, 1), ..., C(k, m_max)]` of Pascal row `k`.
///
/// Each entry comes from its predecessor by one exact multiply-then-divide,
/// so a row costs O(`m_max`) scalar operations; entries past `m = k` are 0.
pub fn binomial_row<T: Count>(k: Index, m_max: Index) -> Vec<T> {
    let mut row = Vec::with_capacity(m_max as usize + 1);
    row.push(T::one());
    for m in 1..=m_max {
        let entry = if m > k {
            T::zero()
        } else {
            row[m as usize - 1].clone() * from_u64::<T>(u64::from(k - m + 1))
                / from_u64::<T>(u64::from(m))
        };
        row.push(entry);
    }
    row
}

fn from_u64<T: Count>(v: u64) -> T {
    T::from_u64(v).expect("value fits the count scalar")
}
