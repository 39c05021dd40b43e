//! Axis-by-axis complex FFT over row-major `N^n` arrays.

use std::cell::RefCell;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use ndarray::{ArrayViewMut, Axis, IxDyn, Zip};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

static PARALLEL: AtomicBool = AtomicBool::new(true);

thread_local! {
    static SCRATCH: RefCell<(Vec<Complex64>, Vec<Complex64>)> = RefCell::new((Vec::new(), Vec::new()));
}

/// Enables or disables line-parallel transforms.
///
/// Every line is transformed by the same plan with the same scratch layout, so
/// the output is bitwise identical either way; serial mode only exists so that
/// reproducibility runs do not depend on a thread pool at all.
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    PARALLEL.load(Ordering::SeqCst)
}

#[derive(Clone)]
pub(crate) struct FftPair {
    pub forward: Arc<dyn Fft<f64>>,
    pub inverse: Arc<dyn Fft<f64>>,
}

impl FftPair {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }
}

fn process_line(fft: &Arc<dyn Fft<f64>>, mut lane: ndarray::ArrayViewMut1<Complex64>) {
    SCRATCH.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (buf, scratch) = &mut *guard;
        let need = fft.get_inplace_scratch_len();
        if scratch.len() < need {
            scratch.resize(need, Complex64::default());
        }
        match lane.as_slice_mut() {
            Some(slice) => fft.process_with_scratch(slice, &mut scratch[..need]),
            None => {
                buf.clear();
                buf.extend(lane.iter().copied());
                fft.process_with_scratch(buf, &mut scratch[..need]);
                for (dst, src) in lane.iter_mut().zip(buf.iter()) {
                    *dst = *src;
                }
            }
        }
    });
}

/// Unnormalized transform along every axis of an `n`-dimensional cube of side `len`.
pub(crate) fn transform_all_axes(values: &mut [Complex64], n: usize, len: usize, fft: &Arc<dyn Fft<f64>>) {
    let shape = IxDyn(&vec![len; n]);
    let mut view = ArrayViewMut::from_shape(shape, values).expect("field length matches grid");
    let parallel = is_parallel() && values_len(n, len) >= 1 << 14;
    for axis in 0..n {
        let lanes = Zip::from(view.lanes_mut(Axis(axis)));
        if parallel {
            lanes.par_for_each(|lane| process_line(fft, lane));
        } else {
            lanes.for_each(|lane| process_line(fft, lane));
        }
    }
}

fn values_len(n: usize, len: usize) -> usize {
    len.pow(n as u32)
}
