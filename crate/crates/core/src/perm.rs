//! Lexicographic permutation enumeration, split by leading element so the
//! blocks can be counted on separate threads.

use rayon::prelude::*;

/// Advances `p` to its lexicographic successor. Returns `false` (leaving
/// `p` sorted descending) once the last permutation has been passed.
pub(crate) fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of positions `i` with `p[i] > p[i + 1]`.
#[inline]
pub(crate) fn descents(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Folds `visit` over every permutation of `1..=n`. Each block with a fixed
/// first letter is folded independently from `init()` and the per-block
/// accumulators are merged with `merge`, which must be commutative so the
/// result does not depend on scheduling.
pub(crate) fn fold_permutations<A, I, V, M>(n: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[u8]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    assert!(n <= u8::MAX as usize);
    if n == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return acc;
    }
    (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut p: Vec<u8> = std::iter::once(first)
                .chain((1..=n as u8).filter(|&x| x != first))
                .collect();
            loop {
                visit(&mut acc, &p);
                if !next_permutation(&mut p[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge)
}
