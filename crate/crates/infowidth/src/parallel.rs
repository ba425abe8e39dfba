//! Deterministic fork-join helper.
//!
//! All parallelism in this crate is "embarrassing": fixed work items,
//! each with its own pre-assigned RNG stream where randomness is
//! involved, merged in item order. Results are therefore identical for
//! every thread count, including 1.

/// Applies `f` to every item, possibly on several scoped threads, and
/// returns the results *in item order*.
///
/// `threads` is clamped to `[1, items.len()]`; items are split into
/// contiguous chunks, one per thread.
pub fn parallel_map<T, U, F>(items: &[T], threads: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk_size = items.len().div_ceil(threads);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || chunk.iter().map(f).collect::<Vec<U>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for handle in handles {
            out.extend(handle.join().expect("worker panicked"));
        }
        out
    })
}

/// Thread-count default: the `INFOWIDTH_THREADS` environment variable
/// when set to a positive integer, otherwise the machine's available
/// parallelism capped at 8.
pub fn default_threads() -> usize {
    if let Ok(value) = std::env::var("INFOWIDTH_THREADS") {
        if let Ok(parsed) = value.trim().parse::<usize>() {
            if parsed >= 1 {
                return parsed;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(8)
}
