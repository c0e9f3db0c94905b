//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon global pool; without it they run the same closures sequentially.
//! Output order is the input order in both cases.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub(crate) fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fills `out[i] = f(i)` in place, chunked so the closure can reuse scratch.
pub(crate) fn fill_chunks<R, F>(out: &mut [R], chunk: usize, f: F)
where
    R: Send,
    F: Fn(usize, &mut [R]) + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    {
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(c, slice)| f(c * chunk, slice));
    }
    #[cfg(not(feature = "parallel"))]
    {
        out.chunks_mut(chunk)
            .enumerate()
            .for_each(|(c, slice)| f(c * chunk, slice));
    }
}

/// True when `pred` holds for every index in `0..n`.
pub(crate) fn all_range<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(pred)
    }
}
