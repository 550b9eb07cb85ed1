//! C interface. Every fallible call returns a `CrosscapStatus`; on failure the
//! message is available from `crosscap_last_error` on the same thread.
//! Strings handed out by the library must be released with `crosscap_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crosscap::abelianize::h1;
use crosscap::enumerate::{todd_coxeter, TableStatus};
use crosscap::replay::{replay, verify_endpoints, DerivationScript, RelationLookup};
use crosscap::verify::{surface_presentation, verify_presentation, verify_surface, VerifyOptions};
use crosscap::{Error, Presentation, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrosscapStatus {
    Ok = 0,
    /// A check ran to completion and found a relator that does not hold.
    VerificationFailed = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    Domain = 5,
    UnknownGenerator = 6,
    StepMismatch = 7,
    Overflow = 8,
    LimitExceeded = 9,
    Io = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrosscapFormat {
    Text = 0,
    Json = 1,
    Cas = 2,
}

/// Opaque presentation handle.
pub struct CrosscapPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CrosscapStatus {
    match e {
        Error::Parse { .. } => CrosscapStatus::Parse,
        Error::UnknownGenerator(_) => CrosscapStatus::UnknownGenerator,
        Error::Domain(_)
        | Error::MissingData(_)
        | Error::NotEliminable(_)
        | Error::GenusMismatch { .. } => CrosscapStatus::Domain,
        Error::StepMismatch { .. } => CrosscapStatus::StepMismatch,
        Error::Overflow(_) => CrosscapStatus::Overflow,
        Error::Io(_) => CrosscapStatus::Io,
    }
}

struct Fail(CrosscapStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<CrosscapStatus, Fail>>(f: F) -> CrosscapStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            CrosscapStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(
            CrosscapStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            CrosscapStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            CrosscapStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    *out = value;
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| {
        Fail(
            CrosscapStatus::Internal,
            "output contains a nul byte".into(),
        )
    })?;
    if out.is_null() {
        return Err(Fail(
            CrosscapStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a>(p: *const CrosscapPresentation) -> Result<&'a Presentation, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| {
        Fail(
            CrosscapStatus::NullArgument,
            "presentation handle is null".into(),
        )
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn crosscap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn crosscap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Presentation of M(N_{g,n}); small genus uses the classical presentations.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_new(
    genus: u32,
    boundary: u32,
    out: *mut *mut CrosscapPresentation,
) -> CrosscapStatus {
    guard(|| {
        let inner = surface_presentation(genus as usize, boundary as usize)?;
        write_out(out, Box::into_raw(Box::new(CrosscapPresentation { inner })))?;
        Ok(CrosscapStatus::Ok)
    })
}

/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_from_json(
    json: *const c_char,
    out: *mut *mut CrosscapPresentation,
) -> CrosscapStatus {
    guard(|| {
        let inner = Presentation::from_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(CrosscapPresentation { inner })))?;
        Ok(CrosscapStatus::Ok)
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_free(p: *mut CrosscapPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_generator_count(
    p: *const CrosscapPresentation,
) -> usize {
    p.as_ref().map_or(0, |h| h.inner.generators.len())
}

/// # Safety
/// `p` must be a live handle; NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_relator_count(
    p: *const CrosscapPresentation,
) -> usize {
    p.as_ref().map_or(0, |h| h.inner.relators.len())
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_emit(
    p: *const CrosscapPresentation,
    format: CrosscapFormat,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let p = handle(p)?;
        let text = match format {
            CrosscapFormat::Text => p.to_text(),
            CrosscapFormat::Json => p.to_json(),
            CrosscapFormat::Cas => p.to_cas(),
        };
        write_string(out, text)?;
        Ok(CrosscapStatus::Ok)
    })
}

/// First homology as JSON `{"free_rank":..,"torsion":[..]}`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_h1(
    p: *const CrosscapPresentation,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        write_string(out, h1(handle(p)?)?.to_json())?;
        Ok(CrosscapStatus::Ok)
    })
}

/// Group order by coset enumeration over the trivial subgroup.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_presentation_order(
    p: *const CrosscapPresentation,
    max_cosets: usize,
    out: *mut usize,
) -> CrosscapStatus {
    guard(|| {
        let table = todd_coxeter(handle(p)?, &[], max_cosets)?;
        match table.status {
            TableStatus::Closed => {
                write_out(out, table.rows.len())?;
                Ok(CrosscapStatus::Ok)
            }
            _ => Err(Fail(
                CrosscapStatus::LimitExceeded,
                format!("enumeration did not close within {max_cosets} cosets"),
            )),
        }
    })
}

fn opts(tier: u8) -> Result<VerifyOptions, Fail> {
    match tier {
        0 => Ok(VerifyOptions::default()),
        1..=3 => Ok(VerifyOptions {
            tiers: vec![tier],
            ..Default::default()
        }),
        t => Err(Fail(CrosscapStatus::Domain, format!("unknown tier {t}"))),
    }
}

/// Verifies the built-in presentation and derived relations of N_{g,n}.
/// `tier` 0 runs every tier. The JSON report is written even when
/// verification fails, in which case the status is `VerificationFailed`.
///
/// # Safety
/// `out_report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_verify_surface(
    genus: u32,
    boundary: u32,
    tier: u8,
    out_report: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let report = verify_surface(genus as usize, boundary as usize, &opts(tier)?)?;
        write_string(out_report, report.to_json())?;
        Ok(if report.is_success() {
            CrosscapStatus::Ok
        } else {
            CrosscapStatus::VerificationFailed
        })
    })
}

/// Verifies the relators of a presentation handle; see `crosscap_verify_surface`.
///
/// # Safety
/// `p` must be a live handle and `out_report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_verify_presentation(
    p: *const CrosscapPresentation,
    tier: u8,
    out_report: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let report = verify_presentation(handle(p)?, &opts(tier)?)?;
        write_string(out_report, report.to_json())?;
        Ok(if report.is_success() {
            CrosscapStatus::Ok
        } else {
            CrosscapStatus::VerificationFailed
        })
    })
}

/// Replays a derivation script given as JSON and checks its endpoints in the
/// representations. On success `out_end` receives the final word.
///
/// # Safety
/// `script_json` must be a nul-terminated string and `out_end` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_replay(
    script_json: *const c_char,
    out_end: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let script = DerivationScript::from_json(read_str(script_json, "script")?)?;
        let lookup = RelationLookup::for_surface(script.genus, script.boundary)?;
        let end = replay(&script, &lookup)?;
        let check = verify_endpoints(&script, &lookup)?;
        if check.status != crosscap::closed::Status::Verified {
            return Err(Fail(
                CrosscapStatus::VerificationFailed,
                format!("endpoints did not verify: {:?}", check.status),
            ));
        }
        write_string(out_end, end.to_string())?;
        Ok(CrosscapStatus::Ok)
    })
}

/// Parses a word and writes its free reduction.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crosscap_word_reduce(
    word: *const c_char,
    out: *mut *mut c_char,
) -> CrosscapStatus {
    guard(|| {
        let w: Word = read_str(word, "word")?.parse()?;
        write_string(out, w.to_string())?;
        Ok(CrosscapStatus::Ok)
    })
}
