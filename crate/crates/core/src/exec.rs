//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (default) independent work items such as
//! matrix entries, eigenpairs or random draws are spread over the rayon pool.
//! Without it, or when [`ExecMode::Sequential`] is requested, everything runs
//! on the calling thread. Results are always returned in index order, so the
//! mode never changes output.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// `Parallel` when compiled with the `parallel` feature.
    pub fn effective(self) -> ExecMode {
        if cfg!(feature = "parallel") {
            self
        } else {
            ExecMode::Sequential
        }
    }
}

/// Work below this many items is not worth a rayon split.
#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
const PAR_THRESHOLD: usize = 64;

/// Evaluates `f(0..len)` and collects in index order.
pub fn map_range<T, F>(mode: ExecMode, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode.effective() {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if len >= PAR_THRESHOLD => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

/// Like [`map_range`] but without the size threshold; meant for coarse
/// tasks (whole random draws, whole eigen-checks).
pub fn map_tasks<T, F>(mode: ExecMode, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode.effective() {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let seq = map_range(ExecMode::Sequential, 500, |i| i * i);
        let par = map_range(ExecMode::Parallel, 500, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(map_tasks(ExecMode::Parallel, 3, |i| i), vec![0, 1, 2]);
    }
}
