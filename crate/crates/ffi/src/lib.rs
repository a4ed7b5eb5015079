//! C ABI over `approval-dhondt`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns an
//! [`AdStatus`]; on failure [`ad_last_error`] describes what went wrong on
//! the calling thread. Strings going in are NUL-terminated UTF-8. Strings
//! coming out are written into caller buffers and always NUL-terminated.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::ptr;

use approval_dhondt::axioms::{check_rule, Axiom, AxiomCaps, AxiomError, Status};
use approval_dhondt::format::parse_election;
use approval_dhondt::rational::to_fraction;
use approval_dhondt::rules::{Rule, RuleConfig, RuleError, TieMode, WinnerReport};
use approval_dhondt::support::{maxmin_support, SupportError};
use approval_dhondt::{CandidateId, CandidateSet, Election};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    /// The output buffer is too small; the required size is reported.
    BufferTooSmall = 6,
    Internal = 7,
}

/// Outcome of an axiom check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdVerdict {
    Satisfied = 0,
    Violated = 1,
    Inconclusive = 2,
}

/// Tie handling for rule evaluation.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdTieMode {
    Deterministic = 0,
    Enumerated = 1,
}

/// A parsed election.
pub struct AdElection(Election);

/// The winners a rule produced on one election.
pub struct AdReport {
    outcomes: Vec<CandidateSet>,
    truncated: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(status: AdStatus, message: impl Into<String>) -> AdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
    status
}

fn clear_error() {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
}

fn read_str<'a>(s: *const c_char) -> Result<&'a str, AdStatus> {
    if s.is_null() {
        return Err(set_error(AdStatus::NullPointer, "null string argument"));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| set_error(AdStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

/// Copies `text` plus a NUL into `buf`. `needed` receives the full size.
fn write_str(text: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> AdStatus {
    let size = text.len() + 1;
    if !needed.is_null() {
        // SAFETY: non-null `needed` points to writable memory per the contract.
        unsafe { *needed = size };
    }
    if buf.is_null() || len < size {
        return set_error(AdStatus::BufferTooSmall, format!("buffer needs {size} bytes"));
    }
    // SAFETY: `buf` has room for `len >= size` bytes.
    unsafe {
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
    }
    AdStatus::Ok
}

fn rule_status(err: &RuleError) -> AdStatus {
    match err {
        RuleError::InstanceTooLarge { .. } => set_error(AdStatus::CapExceeded, err.to_string()),
        _ => set_error(AdStatus::InvalidArgument, err.to_string()),
    }
}

fn config(ties: AdTieMode) -> RuleConfig {
    RuleConfig::from_env().with_ties(match ties {
        AdTieMode::Deterministic => TieMode::Deterministic,
        AdTieMode::Enumerated => TieMode::Enumerated,
    })
}

fn guard(f: impl FnOnce() -> AdStatus) -> AdStatus {
    clear_error();
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| set_error(AdStatus::Internal, "internal error"))
}

/// Copies the calling thread's last error message into `buf`.
///
/// # Safety
/// `buf` must have room for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn ad_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> AdStatus {
    let text = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(&text, buf, len, needed)
}

/// Parses an election from the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ad_election_parse(text: *const c_char, out: *mut *mut AdElection) -> AdStatus {
    guard(|| {
        if out.is_null() {
            return set_error(AdStatus::NullPointer, "null output handle");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_election(text) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(AdElection(e)));
                AdStatus::Ok
            }
            Err(err) => set_error(AdStatus::ParseError, err.to_string()),
        }
    })
}

/// Releases an election. Null is ignored.
///
/// # Safety
/// `e` must come from `ad_election_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ad_election_free(e: *mut AdElection) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of candidates, or 0 for a null handle.
///
/// # Safety
/// `e` must be a live election handle or null.
#[no_mangle]
pub unsafe extern "C" fn ad_election_num_candidates(e: *const AdElection) -> usize {
    e.as_ref().map_or(0, |e| e.0.num_candidates())
}

/// Number of seats, or 0 for a null handle.
///
/// # Safety
/// `e` must be a live election handle or null.
#[no_mangle]
pub unsafe extern "C" fn ad_election_seats(e: *const AdElection) -> usize {
    e.as_ref().map_or(0, |e| e.0.seats())
}

/// Copies the label of candidate `index` into `buf`.
///
/// # Safety
/// `e` must be a live handle; `buf` must have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ad_election_label(
    e: *const AdElection,
    index: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> AdStatus {
    guard(|| {
        let Some(e) = e.as_ref() else {
            return set_error(AdStatus::NullPointer, "null election");
        };
        if index >= e.0.num_candidates() {
            return set_error(AdStatus::InvalidArgument, format!("no candidate {index}"));
        }
        write_str(e.0.label(CandidateId(index)), buf, len, needed)
    })
}

/// Runs a rule (`odh`, `oodh`, `av`, ...) and returns its winners.
///
/// # Safety
/// `e` must be a live handle, `rule` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ad_compute(
    e: *const AdElection,
    rule: *const c_char,
    ties: AdTieMode,
    out: *mut *mut AdReport,
) -> AdStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return set_error(AdStatus::NullPointer, "null election or output handle");
        };
        let rule: Rule = match read_str(rule).map(str::parse) {
            Ok(Ok(r)) => r,
            Ok(Err(err)) => return set_error(AdStatus::InvalidArgument, err.to_string()),
            Err(s) => return s,
        };
        match rule.run(&e.0, &config(ties)) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(report(&e.0, &r)));
                AdStatus::Ok
            }
            Err(err) => rule_status(&err),
        }
    })
}

fn report(e: &Election, r: &WinnerReport) -> AdReport {
    AdReport {
        outcomes: r.outcomes(e),
        truncated: r.truncated,
    }
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must come from `ad_compute` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ad_report_free(r: *mut AdReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of tied winner sets, or 0 for a null handle.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn ad_report_num_winner_sets(r: *const AdReport) -> usize {
    r.as_ref().map_or(0, |r| r.outcomes.len())
}

/// Whether the tie family was cut short by the tie cap.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn ad_report_truncated(r: *const AdReport) -> bool {
    r.as_ref().is_some_and(|r| r.truncated)
}

/// Winner set `set` as a bitmask: bit `i` is candidate `i`.
///
/// # Safety
/// `r` must be a live handle and `mask` writable.
#[no_mangle]
pub unsafe extern "C" fn ad_report_winner_mask(r: *const AdReport, set: usize, mask: *mut u64) -> AdStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), mask.is_null()) else {
            return set_error(AdStatus::NullPointer, "null report or output");
        };
        match r.outcomes.get(set) {
            Some(w) => {
                *mask = w.iter().fold(0u64, |m, c| m | 1 << c.index());
                AdStatus::Ok
            }
            None => set_error(AdStatus::InvalidArgument, format!("no winner set {set}")),
        }
    })
}

fn mask_to_set(e: &Election, mask: u64) -> Result<CandidateSet, AdStatus> {
    let n = e.num_candidates();
    if n < 64 && mask >> n != 0 {
        return Err(set_error(AdStatus::InvalidArgument, "mask names unknown candidates"));
    }
    Ok((0..64).filter(|i| mask >> i & 1 == 1).map(CandidateId).collect())
}

/// Max-min support of the candidates in `mask`, written as an exact `p/q`
/// string (or an integer).
///
/// # Safety
/// `e` must be a live handle; `buf` must have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ad_maxmin_support(
    e: *const AdElection,
    mask: u64,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> AdStatus {
    guard(|| {
        let Some(e) = e.as_ref() else {
            return set_error(AdStatus::NullPointer, "null election");
        };
        let target = match mask_to_set(&e.0, mask) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match maxmin_support(&e.0, target) {
            Ok(r) => write_str(&to_fraction(&r.value), buf, len, needed),
            Err(err @ SupportError::TargetSetTooLarge { .. }) => set_error(AdStatus::CapExceeded, err.to_string()),
            Err(err) => set_error(AdStatus::InvalidArgument, err.to_string()),
        }
    })
}

/// Checks `axiom` (`jr`, `ejr`, `lower-quota`, `house-mono`, `pop-mono`,
/// `closed-list`) for `rule` on the election. An inconclusive verdict
/// leaves its reason in `ad_last_error`.
///
/// # Safety
/// `e` must be a live handle, `rule` and `axiom` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ad_check_axiom(
    e: *const AdElection,
    rule: *const c_char,
    axiom: *const c_char,
    ties: AdTieMode,
    out: *mut AdVerdict,
) -> AdStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return set_error(AdStatus::NullPointer, "null election or output");
        };
        let rule: Rule = match read_str(rule).map(str::parse) {
            Ok(Ok(r)) => r,
            Ok(Err(err)) => return set_error(AdStatus::InvalidArgument, err.to_string()),
            Err(s) => return s,
        };
        let axiom: Axiom = match read_str(axiom).map(str::parse) {
            Ok(Ok(a)) => a,
            Ok(Err(err)) => return set_error(AdStatus::InvalidArgument, err.to_string()),
            Err(s) => return s,
        };
        match check_rule(rule, axiom, &e.0, &config(ties), &AxiomCaps::default()) {
            Ok(v) => {
                *out = match v.status {
                    Status::Satisfied => AdVerdict::Satisfied,
                    Status::Violated => AdVerdict::Violated,
                    Status::Inconclusive(reason) => {
                        set_error(AdStatus::Ok, reason);
                        AdVerdict::Inconclusive
                    }
                };
                AdStatus::Ok
            }
            Err(AxiomError::RuleCannotRun(err)) => rule_status(&err),
            Err(err) => set_error(AdStatus::InvalidArgument, err.to_string()),
        }
    })
}
