//! Lehmer (factoradic) ranking of permutations.

use crate::error::{Error, Result};

/// `m!`, if it fits in a `u64`.
pub fn factorial(m: usize) -> Option<u64> {
    (1..=m as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Smallest `N` with `2^N >= m!`.
pub fn bits_for_permutations(m: usize) -> Option<usize> {
    let f = factorial(m)?;
    Some(if f <= 1 { 0 } else { 64 - (f - 1).leading_zeros() as usize })
}

/// The `index`-th permutation of `items` in lexicographic Lehmer order.
///
/// Indices in `[m!, 2^N)` (the binary-encoding excess) wrap to
/// `index mod m!`; indices at or above `2^N` are rejected.
pub fn lehmer_decode<T: Clone>(index: u64, items: &[T]) -> Result<Vec<T>> {
    let m = items.len();
    let total = factorial(m).ok_or_else(|| Error::InvalidInstance(format!("{m}! overflows u64")))?;
    let bits = bits_for_permutations(m).expect("factorial fits");
    if bits < 64 && index >> bits != 0 {
        return Err(Error::IndexOutOfRange { index, bits });
    }
    let mut rest = index % total;
    let mut pool: Vec<T> = items.to_vec();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let f = factorial(m - 1 - i).expect("smaller factorial fits");
        let digit = (rest / f) as usize;
        rest %= f;
        out.push(pool.remove(digit));
    }
    Ok(out)
}

/// Rank of a permutation of `0..m` in Lehmer order.
pub fn lehmer_encode(perm: &[usize]) -> Result<u64> {
    let m = perm.len();
    let mut used = vec![false; m];
    let mut index = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        if p >= m || used[p] {
            return Err(Error::InvalidInstance(format!("{perm:?} is not a permutation of 0..{m}")));
        }
        let smaller_unused = (0..p).filter(|&q| !used[q]).count() as u64;
        used[p] = true;
        index += smaller_unused * factorial(m - 1 - i).expect("fits");
    }
    Ok(index)
}
