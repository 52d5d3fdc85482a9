//! C ABI over the homcodes library.
//!
//! Every function returns an [`HcStatus`] and writes its result through an
//! out-parameter only on success. Strings handed out are NUL-terminated,
//! owned by the caller, and released with [`hc_string_free`]; handles are
//! released with their matching `_free` function. Null pointer arguments
//! are reported as [`HcStatus::NullPointer`] rather than dereferenced, and
//! the message of the most recent failure on the current thread can be
//! fetched with [`hc_last_error`].
//!
//! Callers must pass pointers obtained from this library (or valid
//! NUL-terminated strings), must not use a handle after freeing it, and
//! must not free the same pointer twice. Handles are not synchronized;
//! share them across threads only with external locking.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use homcodes::cli::{
    parse_config_text, parse_group_arg, run_blowup, run_cert_decode, run_decode, run_homext,
    run_oracle, run_srg_probe, AffineHomJson, BlowupConfig, DecodeConfig, DecodeMode,
    HomextConfig, OracleConfig, SrgProbeConfig, WordSpec,
};
use homcodes::decoders::abelian_local_decode;
use homcodes::error::Error;
use homcodes::groups::Group;
use homcodes::homcore::{lambda_exact, lambda_formula_solvable, ReceivedWord};
use homcodes::rat::{format_rat, parse_rat};

/// Status code returned by every function in this library.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    /// Malformed input: bad group spec, bad JSON, parameter out of range.
    InvalidInput = 1,
    /// A work bound was hit before the operation finished.
    BudgetExceeded = 2,
    /// Proposed generator images violate a group relation.
    RelatorViolation = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    BadUtf8 = 5,
}

/// Opaque finite group handle.
pub struct HcGroup {
    inner: Group,
}

/// Opaque received-word handle; it counts the queries made through it.
pub struct HcWord {
    inner: ReceivedWord,
}

/// Opaque list of decoded affine codewords.
pub struct HcList {
    items: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn status_of(e: &Error) -> HcStatus {
    set_error(&e.to_string());
    match e {
        Error::InvalidInput(_) => HcStatus::InvalidInput,
        Error::BudgetExceeded(_) => HcStatus::BudgetExceeded,
        Error::RelatorViolation(_) => HcStatus::RelatorViolation,
    }
}

unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, HcStatus> {
    if ptr.is_null() {
        return Err(HcStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        HcStatus::BadUtf8
    })
}

unsafe fn out_string(s: String, out: *mut *mut c_char) -> HcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            HcStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            HcStatus::InvalidInput
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::invalid(format!("report serialization failed: {e}")))
}

/// Parses `z:N,..`, `alt:N`, `sym:N`, or group-spec JSON into a handle.
#[no_mangle]
pub unsafe extern "C" fn hc_group_parse(spec: *const c_char, out: *mut *mut HcGroup) -> HcStatus {
    if out.is_null() {
        return HcStatus::NullPointer;
    }
    let spec = match utf8_arg(spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match parse_group_arg(spec).and_then(|gs| Group::from_spec(&gs)) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(HcGroup { inner: g }));
            HcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_group_order(group: *const HcGroup, out: *mut u64) -> HcStatus {
    if group.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    match (*group).inner.order() {
        Ok(n) => {
            *out = n;
            HcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_group_free(group: *mut HcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Maximum agreement of distinct affine codewords over the pair, written
/// as an exact `p/q` string. Uses the closed form when it applies and
/// falls back to enumeration.
#[no_mangle]
pub unsafe extern "C" fn hc_lambda(
    domain: *const HcGroup,
    codomain: *const HcGroup,
    out: *mut *mut c_char,
) -> HcStatus {
    if domain.is_null() || codomain.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    let g = &(*domain).inner;
    let h = &(*codomain).inner;
    let lambda = match lambda_formula_solvable(g, h) {
        Ok(v) => Ok(v),
        Err(Error::InvalidInput(_)) => lambda_exact(g, h),
        Err(e) => Err(e),
    };
    match lambda {
        Ok(v) => out_string(format_rat(&v), out),
        Err(e) => status_of(&e),
    }
}

/// Builds a received word over the pair from word-spec JSON
/// (`{"source": "plant" | "random" | "table", ...}`).
#[no_mangle]
pub unsafe extern "C" fn hc_word_build(
    domain: *const HcGroup,
    codomain: *const HcGroup,
    word_json: *const c_char,
    out: *mut *mut HcWord,
) -> HcStatus {
    if domain.is_null() || codomain.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(word_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let spec: WordSpec = match serde_json::from_str(text) {
        Ok(s) => s,
        Err(e) => {
            set_error(&format!("bad word JSON: {e}"));
            return HcStatus::InvalidInput;
        }
    };
    match spec.build(&(*domain).inner, &(*codomain).inner) {
        Ok((word, _)) => {
            *out = Box::into_raw(Box::new(HcWord { inner: word }));
            HcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Queries counted against the word so far.
#[no_mangle]
pub unsafe extern "C" fn hc_word_queries(word: *const HcWord, out: *mut u64) -> HcStatus {
    if word.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    *out = (*word).inner.queries();
    HcStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn hc_word_free(word: *mut HcWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Runs the local list-decoder for abelian domains at margin `eps`
/// (an exact `p/q` string) and fills a list of affine codewords.
#[no_mangle]
pub unsafe extern "C" fn hc_abelian_decode(
    word: *const HcWord,
    eps: *const c_char,
    seed: u64,
    out: *mut *mut HcList,
) -> HcStatus {
    if word.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    let eps = match utf8_arg(eps) {
        Ok(text) => match parse_rat(text) {
            Ok(r) => r,
            Err(e) => return status_of(&e),
        },
        Err(status) => return status,
    };
    match abelian_local_decode(&(*word).inner, &eps, seed) {
        Ok(outcome) => {
            let items = outcome
                .output
                .iter()
                .map(|psi| to_json(&AffineHomJson::of(psi)))
                .collect::<Result<Vec<_>, _>>();
            match items {
                Ok(items) => {
                    *out = Box::into_raw(Box::new(HcList { items }));
                    HcStatus::Ok
                }
                Err(e) => status_of(&e),
            }
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_list_len(list: *const HcList, out: *mut usize) -> HcStatus {
    if list.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    *out = (*list).items.len();
    HcStatus::Ok
}

/// Copies the codeword at `index` as a JSON object
/// (`{"translation": [..], "images": [[..], ..]}`).
#[no_mangle]
pub unsafe extern "C" fn hc_list_get(
    list: *const HcList,
    index: usize,
    out: *mut *mut c_char,
) -> HcStatus {
    if list.is_null() || out.is_null() {
        return HcStatus::NullPointer;
    }
    match (*list).items.get(index) {
        Some(item) => out_string(item.clone(), out),
        None => {
            set_error("list index out of range");
            HcStatus::InvalidInput
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_list_free(list: *mut HcList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Runs a decode config (JSON, or a report with an embedded config) and
/// returns the JSON report. Certificate-mode configs yield certificate
/// reports, everything else codeword reports.
#[no_mangle]
pub unsafe extern "C" fn hc_run_decode(
    config_json: *const c_char,
    report_out: *mut *mut c_char,
) -> HcStatus {
    if report_out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(config_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let config: DecodeConfig = match parse_config_text(text) {
        Ok(c) => c,
        Err(e) => return status_of(&e),
    };
    let report = if config.mode == DecodeMode::SrgCert {
        run_cert_decode(&config).and_then(|r| to_json(&r))
    } else {
        run_decode(&config).and_then(|r| to_json(&r))
    };
    match report {
        Ok(json) => out_string(json, report_out),
        Err(e) => status_of(&e),
    }
}

/// Classifies the extensions of a partial map described by config JSON;
/// returns the JSON report.
#[no_mangle]
pub unsafe extern "C" fn hc_run_homext(
    config_json: *const c_char,
    report_out: *mut *mut c_char,
) -> HcStatus {
    if report_out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(config_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let report = parse_config_text::<HomextConfig>(text)
        .and_then(|config| run_homext(&config))
        .and_then(|report| to_json(&report));
    match report {
        Ok(json) => out_string(json, report_out),
        Err(e) => status_of(&e),
    }
}

/// Exhaustive reference decoding from config JSON; returns the report.
#[no_mangle]
pub unsafe extern "C" fn hc_run_oracle(
    config_json: *const c_char,
    report_out: *mut *mut c_char,
) -> HcStatus {
    if report_out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(config_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let report = parse_config_text::<OracleConfig>(text)
        .and_then(|config| run_oracle(&config))
        .and_then(|report| to_json(&report));
    match report {
        Ok(json) => out_string(json, report_out),
        Err(e) => status_of(&e),
    }
}

/// Builds and verifies a conjugation family from config JSON
/// (`{"n": .., "k": .., "variant": "point" | "binom"}`).
#[no_mangle]
pub unsafe extern "C" fn hc_run_blowup(
    config_json: *const c_char,
    report_out: *mut *mut c_char,
) -> HcStatus {
    if report_out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(config_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let report = parse_config_text::<BlowupConfig>(text)
        .and_then(|config| run_blowup(&config))
        .and_then(|report| to_json(&report));
    match report {
        Ok(json) => out_string(json, report_out),
        Err(e) => status_of(&e),
    }
}

/// Estimates how often two random even permutations act fully on a
/// near-complete orbit, from config JSON.
#[no_mangle]
pub unsafe extern "C" fn hc_run_srg_probe(
    config_json: *const c_char,
    report_out: *mut *mut c_char,
) -> HcStatus {
    if report_out.is_null() {
        return HcStatus::NullPointer;
    }
    let text = match utf8_arg(config_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let report = parse_config_text::<SrgProbeConfig>(text)
        .and_then(|config| run_srg_probe(&config))
        .and_then(|report| to_json(&report));
    match report {
        Ok(json) => out_string(json, report_out),
        Err(e) => status_of(&e),
    }
}

/// Takes the message of the most recent error on this thread, or writes
/// null when none has occurred. The caller owns the returned string.
#[no_mangle]
pub unsafe extern "C" fn hc_last_error(out: *mut *mut c_char) -> HcStatus {
    if out.is_null() {
        return HcStatus::NullPointer;
    }
    *out = LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    });
    HcStatus::Ok
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
