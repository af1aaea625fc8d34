//! Thread-parallel drivers. Each worker takes a contiguous slice of the
//! index space and the smallest successful index wins, so the answer never
//! depends on the number of workers.

use std::ops::Range;
use std::thread;

use scattered_core::scattered::{greedy_in_order, ExtensionScan};
use scattered_core::{pow_u128, Error, Result, Spread, Subspace};

fn chunks(range: Range<u128>, workers: usize) -> Vec<Range<u128>> {
    let len = range.end.saturating_sub(range.start);
    let workers = (workers.max(1) as u128).min(len.max(1));
    let step = len.div_ceil(workers);
    (0..workers)
        .map(|i| {
            let lo = range.start + i * step;
            lo.min(range.end)..(lo + step).min(range.end)
        })
        .collect()
}

/// Smallest `i` in `range` with `f(i)` returning `Some`, searched by
/// `workers` threads.
pub fn min_index<T, F>(range: Range<u128>, workers: usize, f: F) -> Result<Option<(u128, T)>>
where
    T: Send,
    F: Fn(Range<u128>) -> Result<Option<(u128, T)>> + Sync,
{
    if workers <= 1 {
        return f(range);
    }
    let parts = chunks(range, workers);
    let results: Vec<Result<Option<(u128, T)>>> = thread::scope(|s| {
        let handles: Vec<_> = parts.into_iter().map(|part| s.spawn(|| f(part))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut best: Option<(u128, T)> = None;
    for r in results {
        if let Some((i, v)) = r? {
            if best.as_ref().map_or(true, |(b, _)| i < *b) {
                best = Some((i, v));
            }
        }
    }
    Ok(best)
}

/// Same result as the library's `extend_scattered`.
pub fn extend<S: Spread + Sync + ?Sized>(u: &Subspace, spread: &S, workers: usize) -> Result<Option<Subspace>> {
    let scan = ExtensionScan::new(u, spread)?;
    let total = scan.candidate_count();
    let needed = total.saturating_mul(u.vector_count());
    if needed > u128::from(spread.budget()) {
        return Err(Error::BudgetExceeded { needed, budget: spread.budget() });
    }
    match min_index(1..total, workers, |r| scan.first_in_range(r))? {
        Some((_, w)) => Ok(Some(u.extended(&w)?)),
        None => Ok(None),
    }
}

/// Same result as the library's `maximally_scatter`.
pub fn maximally_scatter<S: Spread + Sync + ?Sized>(u: &Subspace, spread: &S, workers: usize) -> Result<Subspace> {
    let mut current = u.clone();
    while let Some(next) = extend(&current, spread, workers)? {
        current = next;
    }
    Ok(current)
}

/// A random order of the nonzero vector indices, fixed by `seed`.
pub fn shuffled_order(q: u32, n: usize, seed: u64) -> Vec<u128> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut order: Vec<u128> = (1..pow_u128(u64::from(q), n as u32)).collect();
    order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Randomized greedy restarts; restart `i` uses seed `seed + i`. Returns the
/// first restart reaching `target`, or the largest result with the smallest
/// restart index when none does.
pub fn random_restarts<S: Spread + Sync + ?Sized>(
    spread: &S,
    start: &Subspace,
    target: usize,
    restarts: u64,
    seed: u64,
    workers: usize,
) -> Result<(u64, Subspace)> {
    let q = spread.field().order();
    let n = spread.ambient_dim();
    let run = |i: u64| greedy_in_order(spread, start, shuffled_order(q, n, seed.wrapping_add(i)), Some(target));
    let hit = min_index(0..u128::from(restarts), workers, |range| {
        for i in range {
            let u = run(i as u64)?;
            if u.dim() >= target {
                return Ok(Some((i, u)));
            }
        }
        Ok(None)
    })?;
    if let Some((i, u)) = hit {
        return Ok((i as u64, u));
    }
    let mut best: Option<(u64, Subspace)> = None;
    for i in 0..restarts {
        let u = run(i)?;
        if best.as_ref().map_or(true, |(_, b)| u.dim() > b.dim()) {
            best = Some((i, u));
        }
    }
    best.ok_or_else(|| Error::InvalidInput("need at least one restart".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use scattered_core::{DesarguesianSpread, FieldTower};

    #[test]
    fn chunks_cover_range() {
        for workers in 1..9 {
            let parts = chunks(5..42, workers);
            assert_eq!(parts.first().unwrap().start, 5);
            assert_eq!(parts.last().unwrap().end, 42);
            assert!(parts.windows(2).all(|w| w[0].end == w[1].start));
        }
        assert_eq!(chunks(0..0, 4), vec![0..0]);
    }

    #[test]
    fn minimum_is_worker_independent() {
        let f = |r: Range<u128>| Ok(r.into_iter().find(|i| i % 7 == 3 && *i > 20).map(|i| (i, i * 2)));
        for workers in 1..6 {
            assert_eq!(min_index(0..100, workers, f).unwrap(), Some((24, 48)));
        }
    }

    #[test]
    fn parallel_extension_matches_library() {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 2, None).unwrap(), 3).unwrap();
        let zero = Subspace::zero(d.field().clone(), 6);
        let lib = scattered_core::scattered::maximally_scatter(&zero, &d).unwrap();
        for workers in [1, 2, 3, 8] {
            assert_eq!(maximally_scatter(&zero, &d, workers).unwrap(), lib);
        }
    }

    #[test]
    fn restarts_are_worker_independent() {
        let d = DesarguesianSpread::new(FieldTower::new(2, 1, 2, None).unwrap(), 3).unwrap();
        let zero = Subspace::zero(d.field().clone(), 6);
        let a = random_restarts(&d, &zero, 3, 6, 11, 1).unwrap();
        let b = random_restarts(&d, &zero, 3, 6, 11, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1.dim(), 3);
    }
}
