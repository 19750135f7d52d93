//! C interface.
//!
//! Every function returns a [`BlStatus`]; on failure a description is
//! available from [`bl_last_error`] on the same thread. Sorters are opaque
//! handles created by [`bl_sorter_new`] and released by [`bl_sorter_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use blocklomuto::cost::{self, Measure, Scheme};
use blocklomuto::{
    instrumented_sort, Algorithm, Counters, Distribution, DistributionKind, Error, PivotStrategy,
    SampleVector, SortConfig,
};

/// Status code returned by every function.
pub type BlStatus = i32;

pub const BL_OK: BlStatus = 0;
/// A required pointer argument was null.
pub const BL_ERR_NULL: BlStatus = 1;
/// A string argument was not valid UTF-8.
pub const BL_ERR_UTF8: BlStatus = 2;
/// An algorithm, strategy, distribution, scheme or measure name was not recognized.
pub const BL_ERR_UNKNOWN_NAME: BlStatus = 3;
/// A configuration value was rejected (block size, cutoff, pivot count).
pub const BL_ERR_INVALID_CONFIG: BlStatus = 4;
/// The operation is not available for this algorithm.
pub const BL_ERR_UNSUPPORTED: BlStatus = 5;
/// An output buffer was too small.
pub const BL_ERR_BUFFER_TOO_SMALL: BlStatus = 6;
/// Any other failure, including internal panics.
pub const BL_ERR_INTERNAL: BlStatus = 7;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(code: BlStatus, msg: impl Into<String>) -> BlStatus {
    set_error(msg);
    code
}

fn status_of(e: &Error) -> BlStatus {
    match e {
        Error::Config(blocklomuto::ConfigError::UnknownStrategy(_))
        | Error::UnknownAlgorithm(_)
        | Error::UnknownDistribution(_)
        | Error::UnknownScheme(_)
        | Error::UnknownMeasure(_) => BL_ERR_UNKNOWN_NAME,
        Error::Config(_) | Error::SampleVectorLength { .. } => BL_ERR_INVALID_CONFIG,
        Error::NotInstrumented(_) | Error::SearchTooLarge { .. } => BL_ERR_UNSUPPORTED,
        _ => BL_ERR_INTERNAL,
    }
}

fn from_error(e: Error) -> BlStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, converting panics into `BL_ERR_INTERNAL`.
fn guard(f: impl FnOnce() -> BlStatus) -> BlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(BL_ERR_INTERNAL, "internal panic"),
    }
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BlStatus> {
    if s.is_null() {
        return Err(fail(BL_ERR_NULL, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(BL_ERR_UTF8, "string argument is not UTF-8"))
}

/// Opaque sorter: an algorithm plus its configuration.
pub struct BlSorter {
    algorithm: Algorithm,
    block_size: usize,
    cutoff: Option<usize>,
    strategy: Option<PivotStrategy>,
    equal_guard: bool,
    config: SortConfig,
}

impl BlSorter {
    /// Rebuilds the configuration after a change, rolling back on rejection.
    fn update(&mut self, change: impl FnOnce(&mut BlSorter)) -> BlStatus {
        let saved = (self.block_size, self.cutoff, self.strategy.clone(), self.equal_guard);
        change(self);
        let mut b = SortConfig::builder()
            .block_size(self.block_size)
            .equal_guard(self.equal_guard);
        if let Some(c) = self.cutoff {
            b = b.insertion_cutoff(c);
        }
        if let Some(s) = &self.strategy {
            b = b.strategy(s.clone());
        }
        let built = b
            .build()
            .map_err(Error::from)
            .and_then(|c| c.check_pivots(self.algorithm).map(|_| c).map_err(Error::from));
        match built {
            Ok(config) => {
                self.config = config;
                BL_OK
            }
            Err(e) => {
                (self.block_size, self.cutoff, self.strategy, self.equal_guard) = saved;
                from_error(e)
            }
        }
    }
}

/// Comparison and access counts of one instrumented sort.
#[repr(C)]
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct BlCounters {
    pub partitions: u64,
    pub sum_partition_cmp: u64,
    pub sum_partition_ma: u64,
    pub boundary_ma: u64,
    pub sample_cmp: u64,
    pub sample_ma: u64,
    pub small_sort_cmp: u64,
    pub small_sort_ma: u64,
    pub guard_cmp: u64,
    pub total_cmp: u64,
    pub total_ma: u64,
    pub total_swaps: u64,
    pub max_depth: u32,
}

impl From<Counters> for BlCounters {
    fn from(c: Counters) -> Self {
        BlCounters {
            partitions: c.partitions,
            sum_partition_cmp: c.sum_partition_cmp,
            sum_partition_ma: c.sum_partition_ma,
            boundary_ma: c.boundary_ma,
            sample_cmp: c.sample_cmp,
            sample_ma: c.sample_ma,
            small_sort_cmp: c.small_sort_cmp,
            small_sort_ma: c.small_sort_ma,
            guard_cmp: c.guard_cmp,
            total_cmp: c.total_cmp,
            total_ma: c.total_ma,
            total_swaps: c.total_swaps,
            max_depth: c.max_depth,
        }
    }
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a sorter for `algorithm` ("classic", "L1", "L2" or "std") with
/// default settings.
///
/// # Safety
/// `algorithm` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_new(algorithm: *const c_char, out: *mut *mut BlSorter) -> BlStatus {
    guard(|| {
        if out.is_null() {
            return fail(BL_ERR_NULL, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(algorithm) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let algorithm: Algorithm = match name.parse() {
            Ok(a) => a,
            Err(e) => return from_error(e),
        };
        let sorter = BlSorter {
            algorithm,
            block_size: blocklomuto::sort::DEFAULT_BLOCK_SIZE,
            cutoff: None,
            strategy: None,
            equal_guard: true,
            config: SortConfig::default(),
        };
        *out = Box::into_raw(Box::new(sorter));
        BL_OK
    })
}

/// Releases a sorter. Null is ignored.
///
/// # Safety
/// `sorter` must be null or come from [`bl_sorter_new`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_free(sorter: *mut BlSorter) {
    if !sorter.is_null() {
        drop(Box::from_raw(sorter));
    }
}

/// # Safety
/// `sorter` must be null or a live handle.
unsafe fn with_sorter(sorter: *mut BlSorter, f: impl FnOnce(&mut BlSorter) -> BlStatus) -> BlStatus {
    guard(|| match sorter.as_mut() {
        Some(s) => f(s),
        None => fail(BL_ERR_NULL, "null sorter"),
    })
}

/// # Safety
/// `sorter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_set_block_size(sorter: *mut BlSorter, block_size: usize) -> BlStatus {
    with_sorter(sorter, |s| s.update(|s| s.block_size = block_size))
}

/// # Safety
/// `sorter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_set_cutoff(sorter: *mut BlSorter, cutoff: usize) -> BlStatus {
    with_sorter(sorter, |s| s.update(|s| s.cutoff = Some(cutoff)))
}

/// # Safety
/// `sorter` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_set_equal_guard(sorter: *mut BlSorter, on: bool) -> BlStatus {
    with_sorter(sorter, |s| s.update(|s| s.equal_guard = on))
}

/// Sets the pivot strategy by name, e.g. "2 (1,3 of 5)".
///
/// # Safety
/// `sorter` must be a live handle, `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bl_sorter_set_strategy(sorter: *mut BlSorter, name: *const c_char) -> BlStatus {
    with_sorter(sorter, |s| {
        let name = match read_str(name) {
            Ok(n) => n,
            Err(code) => return code,
        };
        match name.parse::<PivotStrategy>() {
            Ok(strategy) => s.update(|s| s.strategy = Some(strategy)),
            Err(e) => from_error(e.into()),
        }
    })
}

/// # Safety
/// `data` must point to `len` elements, or be null with `len == 0`.
unsafe fn sort_raw<T: Ord>(sorter: *mut BlSorter, data: *mut T, len: usize) -> BlStatus {
    with_sorter(sorter, |s| {
        if len == 0 {
            return BL_OK;
        }
        if data.is_null() {
            return fail(BL_ERR_NULL, "null data");
        }
        let v = slice::from_raw_parts_mut(data, len);
        match blocklomuto::sort(s.algorithm, v, &s.config) {
            Ok(()) => BL_OK,
            Err(e) => from_error(e),
        }
    })
}

/// Sorts `len` unsigned 64-bit keys in place.
///
/// # Safety
/// `sorter` must be a live handle; `data` must point to `len` writable
/// elements (may be null if `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn bl_sort_u64(sorter: *mut BlSorter, data: *mut u64, len: usize) -> BlStatus {
    sort_raw(sorter, data, len)
}

/// Sorts `len` signed 64-bit keys in place.
///
/// # Safety
/// As [`bl_sort_u64`].
#[no_mangle]
pub unsafe extern "C" fn bl_sort_i64(sorter: *mut BlSorter, data: *mut i64, len: usize) -> BlStatus {
    sort_raw(sorter, data, len)
}

/// Sorts like [`bl_sort_u64`] and reports the cost counts. Not available
/// for "std".
///
/// # Safety
/// As [`bl_sort_u64`]; `counters` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_sort_u64_counted(
    sorter: *mut BlSorter,
    data: *mut u64,
    len: usize,
    counters: *mut BlCounters,
) -> BlStatus {
    with_sorter(sorter, |s| {
        if counters.is_null() || (data.is_null() && len > 0) {
            return fail(BL_ERR_NULL, "null data or counters");
        }
        let v: &mut [u64] = if len == 0 {
            &mut []
        } else {
            slice::from_raw_parts_mut(data, len)
        };
        match instrumented_sort(s.algorithm, v, &s.config) {
            Ok(c) => {
                *counters = c.into();
                BL_OK
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `t` must point to `len` elements.
unsafe fn read_t(t: *const usize, len: usize) -> Result<SampleVector, BlStatus> {
    if t.is_null() {
        return Err(fail(BL_ERR_NULL, "null sample vector"));
    }
    SampleVector::new(slice::from_raw_parts(t, len).to_vec()).map_err(|e| from_error(e.into()))
}

/// Writes `H(t)` for the sample vector `t[0..len]`.
///
/// # Safety
/// `t` must point to `len` elements, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_entropy(t: *const usize, len: usize, out: *mut f64) -> BlStatus {
    guard(|| {
        if out.is_null() {
            return fail(BL_ERR_NULL, "null output pointer");
        }
        match read_t(t, len) {
            Ok(t) => {
                *out = cost::entropy_h(&t).to_f64();
                BL_OK
            }
            Err(code) => code,
        }
    })
}

/// # Safety
/// Both must be NUL-terminated strings.
unsafe fn scheme_and_measure(scheme: *const c_char, measure: *const c_char) -> Result<(Scheme, Measure), BlStatus> {
    let scheme = read_str(scheme)?.parse::<Scheme>().map_err(from_error)?;
    let measure = read_str(measure)?.parse::<Measure>().map_err(from_error)?;
    Ok((scheme, measure))
}

/// Writes the `n ln n` coefficient of the expected sorting cost.
///
/// # Safety
/// `scheme` and `measure` must be NUL-terminated strings; `t` must point to
/// `len` elements; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_sorting_constant(
    scheme: *const c_char,
    measure: *const c_char,
    t: *const usize,
    len: usize,
    out: *mut f64,
) -> BlStatus {
    guard(|| {
        if out.is_null() {
            return fail(BL_ERR_NULL, "null output pointer");
        }
        let (scheme, measure) = match scheme_and_measure(scheme, measure) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let t = match read_t(t, len) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match cost::sorting_constant(scheme, measure, &t) {
            Ok(c) => {
                *out = c.to_f64();
                BL_OK
            }
            Err(e) => from_error(e),
        }
    })
}

/// Finds the best sample vector with `additional` extra elements. Writes
/// the vector to `t_out` (capacity `t_cap`), its length to `t_len` and the
/// constant to `constant`.
///
/// # Safety
/// String arguments must be NUL-terminated; `t_out` must hold `t_cap`
/// elements; `t_len` and `constant` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_best_t(
    scheme: *const c_char,
    measure: *const c_char,
    additional: usize,
    t_out: *mut usize,
    t_cap: usize,
    t_len: *mut usize,
    constant: *mut f64,
) -> BlStatus {
    guard(|| {
        if t_out.is_null() || t_len.is_null() || constant.is_null() {
            return fail(BL_ERR_NULL, "null output pointer");
        }
        let (scheme, measure) = match scheme_and_measure(scheme, measure) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let row = match cost::best_t(scheme, measure, additional) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        let t = row.best_t.entries();
        *t_len = t.len();
        if t.len() > t_cap {
            return fail(BL_ERR_BUFFER_TOO_SMALL, format!("sample vector needs {} slots", t.len()));
        }
        slice::from_raw_parts_mut(t_out, t.len()).copy_from_slice(t);
        *constant = row.constant.to_f64();
        BL_OK
    })
}

/// Fills `out[0..n]` with the named input distribution.
///
/// # Safety
/// `dist` must be a NUL-terminated string; `out` must hold `n` elements
/// (may be null if `n` is 0).
#[no_mangle]
pub unsafe extern "C" fn bl_generate(
    dist: *const c_char,
    n: usize,
    seed: u64,
    stream: u64,
    out: *mut u64,
) -> BlStatus {
    guard(|| {
        let kind: DistributionKind = match read_str(dist) {
            Ok(s) => match s.parse() {
                Ok(k) => k,
                Err(e) => return from_error(e),
            },
            Err(code) => return code,
        };
        if n == 0 {
            return BL_OK;
        }
        if out.is_null() {
            return fail(BL_ERR_NULL, "null output buffer");
        }
        let keys = blocklomuto::generate(&Distribution::new(kind, n, seed).with_stream(stream));
        slice::from_raw_parts_mut(out, n).copy_from_slice(&keys);
        BL_OK
    })
}
