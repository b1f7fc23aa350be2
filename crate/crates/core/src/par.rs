//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (the default) the parallel entry points run
//! on rayon; without it they fall back to the sequential code path. Callers
//! can also force sequential execution explicitly, which is what the
//! benchmark suite uses to compare the two.

/// Execution mode for the data-parallel inner loops.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Parallel,
    Sequential,
}

/// Maps `f` over `items`, parallel when requested and compiled in.
pub fn map_collect<T, U, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        Mode::Sequential => items.into_iter().map(f).collect(),
        Mode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

/// Maps `f` over borrowed items.
pub fn map_ref_collect<T, U, F>(mode: Mode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        Mode::Sequential => items.iter().map(f).collect(),
        Mode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

/// Configures the global worker pool size; silently ignored without the
/// `parallel` feature or when a pool already exists.
pub fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}
