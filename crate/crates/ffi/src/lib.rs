//! C ABI over the hodgemc invariant calculus.
//!
//! The surface works with an opaque [`HodgemcData`] handle and JSON text in
//! both directions, so bindings in any language only need strings and
//! pointers.  Every fallible call returns a [`HodgemcStatus`]; on failure a
//! thread-local message is available through [`hodgemc_last_error`].
//! Strings returned through out-parameters are owned by the caller and
//! must be released with [`hodgemc_string_free`]; handles with
//! [`hodgemc_data_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use hodgemc::angle::Angle;
use hodgemc::error::Error;
use hodgemc::invariants::{FiniteLabel, ModuleData, PointLocation};
use hodgemc::oracle::VerifyOptions;
use hodgemc::transforms::{KummerParameter, TwistParameter};
use hodgemc::{io, katz, oracle, transforms};

/// Opaque handle to one module-data package.
pub struct HodgemcData(ModuleData);

/// Status codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HodgemcStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    InconsistentData = 3,
    UnavailableInvariant = 4,
    DegenerateConvolution = 5,
    StuckChain = 6,
    NotRigid = 7,
    PreconditionViolated = 8,
    UnsupportedEigenvalue = 9,
    DivisionByZero = 10,
    OracleMismatch = 11,
    IoError = 12,
    NullPointer = 13,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> HodgemcStatus {
    match err {
        Error::InvalidArgument(_) => HodgemcStatus::InvalidArgument,
        Error::InconsistentData(_) => HodgemcStatus::InconsistentData,
        Error::UnavailableInvariant(_) => HodgemcStatus::UnavailableInvariant,
        Error::DegenerateConvolution(_) => HodgemcStatus::DegenerateConvolution,
        Error::StuckChain(_) => HodgemcStatus::StuckChain,
        Error::NotRigid(_) => HodgemcStatus::NotRigid,
        Error::Precondition(_) => HodgemcStatus::PreconditionViolated,
        Error::Parse(_) => HodgemcStatus::ParseError,
        Error::UnsupportedEigenvalue(_) => HodgemcStatus::UnsupportedEigenvalue,
        Error::DivisionByZero => HodgemcStatus::DivisionByZero,
        Error::OracleMismatch(_) => HodgemcStatus::OracleMismatch,
        Error::Io(_) => HodgemcStatus::IoError,
    }
}

fn fail(err: Error) -> HodgemcStatus {
    set_error(&err.to_string());
    status_of(&err)
}

fn null_check<T>(ptr: *const T, name: &str) -> Result<(), HodgemcStatus> {
    if ptr.is_null() {
        set_error(&format!("null pointer argument '{name}'"));
        Err(HodgemcStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, HodgemcStatus> {
    null_check(ptr, name)?;
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("argument '{name}' is not valid UTF-8"));
        HodgemcStatus::InvalidArgument
    })
}

fn out_string(text: String, out: *mut *mut c_char) -> HodgemcStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL byte");
            return HodgemcStatus::IoError;
        }
    };
    unsafe { *out = c.into_raw() };
    HodgemcStatus::Ok
}

fn out_data(data: ModuleData, out: *mut *mut HodgemcData) -> HodgemcStatus {
    unsafe { *out = Box::into_raw(Box::new(HodgemcData(data))) };
    HodgemcStatus::Ok
}

/// Message of the last failure on this thread; owned by the library and
/// valid until the next failing call.
#[no_mangle]
pub extern "C" fn hodgemc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a data handle.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_data_free(data: *mut HodgemcData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Parses a JSON data document into a handle.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_data_parse(
    json: *const c_char,
    out: *mut *mut HodgemcData,
) -> HodgemcStatus {
    if let Err(s) = null_check(out, "out") {
        return s;
    }
    let text = match read_str(json, "json") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match io::parse_data(text) {
        Ok(data) => out_data(data, out),
        Err(e) => fail(e),
    }
}

/// Serializes a handle to the canonical JSON document; `anchor` shifts the
/// smallest populated Hodge index to zero first.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_data_serialize(
    data: *const HodgemcData,
    anchor: bool,
    out: *mut *mut c_char,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out, "out")) {
        return s;
    }
    let data = &(*data).0;
    let presented = if anchor { io::anchor_p(data) } else { data.clone() };
    out_string(io::serialize_data(&presented), out)
}

#[no_mangle]
pub unsafe extern "C" fn hodgemc_data_clone(
    data: *const HodgemcData,
    out: *mut *mut HodgemcData,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out, "out")) {
        return s;
    }
    out_data((*data).0.clone(), out)
}

/// Total rank Σ_p h^p; zero on a null handle.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_data_rank(data: *const HodgemcData) -> u64 {
    if data.is_null() {
        return 0;
    }
    (*data).0.rank()
}

/// Katz rigidity index (2 for rigid irreducible data).
#[no_mangle]
pub unsafe extern "C" fn hodgemc_rigidity_index(
    data: *const HodgemcData,
    out: *mut i64,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out, "out")) {
        return s;
    }
    match katz::rigidity_index(&(*data).0) {
        Ok(index) => {
            *out = index;
            HodgemcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Rank-consistency and invariant report as JSON; `out_clean` says whether
/// the report is empty.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_check(
    data: *const HodgemcData,
    out_report: *mut *mut c_char,
    out_clean: *mut bool,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data")
        .and(null_check(out_report, "out_report"))
        .and(null_check(out_clean, "out_clean"))
    {
        return s;
    }
    let (text, clean) = io::serialize_check(&(*data).0);
    *out_clean = clean;
    out_string(text, out_report)
}

/// Middle convolution MC_{λ₀} with γ₀ = gamma0_num/gamma0_den.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_middle_convolve(
    data: *const HodgemcData,
    gamma0_num: i64,
    gamma0_den: i64,
    out: *mut *mut HodgemcData,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out, "out")) {
        return s;
    }
    let result = Angle::new(gamma0_num, gamma0_den)
        .and_then(KummerParameter::new)
        .and_then(|g0| transforms::middle_convolve(&(*data).0, &g0));
    match result {
        Ok(d) => out_data(d, out),
        Err(e) => fail(e),
    }
}

/// Rank-one twist; `exponents` is a comma-separated list of LOC=A/B pairs,
/// e.g. `0=1/3,1=2/3`.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_twist(
    data: *const HodgemcData,
    exponents: *const c_char,
    out: *mut *mut HodgemcData,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out, "out")) {
        return s;
    }
    let text = match read_str(exponents, "exponents") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_exponents(text).and_then(|tw| transforms::twist(&(*data).0, &tw)) {
        Ok(d) => out_data(d, out),
        Err(e) => fail(e),
    }
}

fn parse_exponents(text: &str) -> hodgemc::Result<TwistParameter> {
    let mut exponents: Vec<(FiniteLabel, Angle)> = Vec::new();
    for pair in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (loc, angle) = pair.split_once('=').ok_or_else(|| {
            Error::Parse(format!("expected LOC=A/B in exponent list, got '{pair}'"))
        })?;
        let label = match io::parse_location(loc.trim())? {
            PointLocation::Finite(l) => l,
            PointLocation::Infinity => {
                return Err(Error::InvalidArgument(
                    "the infinity exponent is derived; twist only finite points".into(),
                ))
            }
        };
        if exponents.iter().any(|(l, _)| *l == label) {
            return Err(Error::InvalidArgument(format!(
                "duplicate twist location in '{pair}'"
            )));
        }
        exponents.push((label, angle.trim().parse()?));
    }
    Ok(TwistParameter::new(exponents))
}

/// Hypergeometric data from comma-separated angle lists.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_hypergeometric(
    alpha_csv: *const c_char,
    beta_csv: *const c_char,
    out: *mut *mut HodgemcData,
) -> HodgemcStatus {
    if let Err(s) = null_check(out, "out") {
        return s;
    }
    let alpha = match read_str(alpha_csv, "alpha_csv") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let beta = match read_str(beta_csv, "beta_csv") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let result = parse_angles(alpha)
        .and_then(|a| parse_angles(beta).map(|b| (a, b)))
        .and_then(|(a, b)| katz::hypergeometric(&a, &b));
    match result {
        Ok(d) => out_data(d, out),
        Err(e) => fail(e),
    }
}

fn parse_angles(csv: &str) -> hodgemc::Result<Vec<Angle>> {
    csv.split(',').map(|s| s.trim().parse()).collect()
}

/// Katz reduction; the chain document is returned as JSON.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_reduce(
    data: *const HodgemcData,
    out_chain: *mut *mut c_char,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data").and(null_check(out_chain, "out_chain")) {
        return s;
    }
    match katz::reduce(&(*data).0) {
        Ok(chain) => out_string(io::serialize_chain(&chain), out_chain),
        Err(e) => fail(e),
    }
}

/// Reduces the data and replays the chain through the matrix oracle.
/// `out_clean` reports whether every snapshot matched.
#[no_mangle]
pub unsafe extern "C" fn hodgemc_verify(
    data: *const HodgemcData,
    seed: u64,
    max_order: u64,
    out_report: *mut *mut c_char,
    out_clean: *mut bool,
) -> HodgemcStatus {
    if let Err(s) = null_check(data, "data")
        .and(null_check(out_report, "out_report"))
        .and(null_check(out_clean, "out_clean"))
    {
        return s;
    }
    let opts = VerifyOptions {
        max_order: if max_order == 0 {
            oracle::DEFAULT_MAX_ORDER
        } else {
            max_order
        },
        seed,
    };
    let result = katz::reduce(&(*data).0).and_then(|chain| oracle::verify_chain(&chain, &opts));
    match result {
        Ok(report) => {
            *out_clean = report.is_clean();
            out_string(io::serialize_verify(&report), out_report)
        }
        Err(e) => fail(e),
    }
}
