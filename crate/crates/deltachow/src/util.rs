//! Small shared helpers.

use crate::error::Result;

/// Map `f` over `items`, fanning out over at most `jobs` threads while
/// keeping the output order. Values are immutable and operations pure, so
/// this is observationally identical to the serial map.
pub(crate) fn par_map<T, U, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let mut slots: Vec<Option<Result<U>>> = (0..items.len()).map(|_| None).collect();
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (items_chunk, slots_chunk) in items.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            let f = &f;
            scope.spawn(move || {
                for (item, slot) in items_chunk.iter().zip(slots_chunk.iter_mut()) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot is filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_serial() {
        let items: Vec<u64> = (0..17).collect();
        let serial = par_map(&items, 1, |&x| Ok(x * x)).unwrap();
        let parallel = par_map(&items, 4, |&x| Ok(x * x)).unwrap();
        assert_eq!(serial, parallel);
    }
}
