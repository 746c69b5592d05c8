//! Deterministic chunked parallel map.
//!
//! Results are collected in input order, so output is identical for every
//! worker count; callers use it only for pure precomputation against a
//! frozen store snapshot.

pub fn pmap<T, U, F>(items: &[T], workers: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 * workers {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    let slots: Vec<(usize, &mut [Option<U>])> = {
        let mut rest: &mut [Option<U>] = &mut out;
        let mut slots = Vec::new();
        let mut start = 0;
        while !rest.is_empty() {
            let take = chunk.min(rest.len());
            let (head, tail) = rest.split_at_mut(take);
            slots.push((start, head));
            start += take;
            rest = tail;
        }
        slots
    };
    std::thread::scope(|scope| {
        for (start, slot) in slots {
            let f = &f;
            let items = &items[start..start + slot.len()];
            scope.spawn(move || {
                for (s, it) in slot.iter_mut().zip(items) {
                    *s = Some(f(it));
                }
            });
        }
    });
    out.into_iter().map(|o| o.expect("worker filled every slot")).collect()
}
