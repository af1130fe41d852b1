//! Lexicographic enumeration of `r`-subsets of `0..universe`, split into
//! contiguous blocks (one per leading element) for data-parallel folds.
//!
//! Block results are gathered in block order and merged left to right, so
//! the outcome does not depend on the number of worker threads.

use rayon::prelude::*;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on every `r`-subset of `0..universe` whose smallest element is
/// `first`, in lexicographic order.
pub fn for_each_with_first<F: FnMut(&[usize])>(universe: usize, r: usize, first: usize, mut f: F) {
    if r == 0 || first + r > universe {
        return;
    }
    let mut c: Vec<usize> = (0..r).map(|i| first + i).collect();
    loop {
        f(&c);
        // advance positions 1..r; position 0 stays pinned
        let mut i = r - 1;
        loop {
            if i == 0 {
                return;
            }
            if c[i] < universe - (r - i) {
                c[i] += 1;
                for j in i + 1..r {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Calls `f` on every `r`-subset of `0..universe`, in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(universe: usize, r: usize, mut f: F) {
    if r == 0 {
        f(&[]);
        return;
    }
    for first in 0..universe.saturating_sub(r - 1) {
        for_each_with_first(universe, r, first, &mut f);
    }
}

/// Parallel fold over all `r`-subsets of `0..universe`.
///
/// `fold` accumulates one block (all subsets sharing a leading element);
/// `merge` combines block results in lexicographic block order.
pub fn par_fold_combinations<T, I, F, M>(universe: usize, r: usize, identity: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &[usize]) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    if r == 0 {
        return fold(identity(), &[]);
    }
    let blocks = universe.saturating_sub(r - 1);
    let parts: Vec<T> = (0..blocks)
        .into_par_iter()
        .map(|first| {
            let mut acc = Some(identity());
            for_each_with_first(universe, r, first, |c| {
                acc = Some(fold(acc.take().unwrap(), c));
            });
            acc.unwrap()
        })
        .collect();
    parts.into_iter().fold(identity(), merge)
}
