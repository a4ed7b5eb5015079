use std::ffi::{c_char, CStr, CString};
use std::ptr;

use approval_dhondt_ffi::*;

const SEVEN_CANDIDATES: &str = "\
candidates: a b c d e f g
seats: 3
voters: 45000
ballot 10000: a b
ballot 6000: a c
ballot 4000: b
ballot 5500: c
ballot 9500: d
ballot 5000: e f g
ballot 3000: e
";

fn parse(text: &str) -> *mut AdElection {
    let text = CString::new(text).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { ad_election_parse(text.as_ptr(), &mut e) }, AdStatus::Ok);
    assert!(!e.is_null());
    e
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let status = unsafe { ad_last_error(buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, AdStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn mask(e: *const AdElection, labels: &[&str]) -> u64 {
    let n = unsafe { ad_election_num_candidates(e) };
    let mut m = 0;
    for i in 0..n {
        let mut buf = [0 as c_char; 16];
        assert_eq!(
            unsafe { ad_election_label(e, i, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) },
            AdStatus::Ok
        );
        let label = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
        if labels.contains(&label) {
            m |= 1 << i;
        }
    }
    m
}

#[test]
fn computes_odh_winners() {
    let e = parse(SEVEN_CANDIDATES);
    assert_eq!(unsafe { ad_election_seats(e) }, 3);
    let rule = CString::new("odh").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { ad_compute(e, rule.as_ptr(), AdTieMode::Deterministic, &mut r) },
        AdStatus::Ok
    );
    assert_eq!(unsafe { ad_report_num_winner_sets(r) }, 1);
    assert!(!unsafe { ad_report_truncated(r) });
    let mut w = 0;
    assert_eq!(unsafe { ad_report_winner_mask(r, 0, &mut w) }, AdStatus::Ok);
    assert_eq!(w, mask(e, &["a", "c", "d"]));
    assert_eq!(unsafe { ad_report_winner_mask(r, 1, &mut w) }, AdStatus::InvalidArgument);
    unsafe {
        ad_report_free(r);
        ad_election_free(e);
    }
}

#[test]
fn maxmin_is_exact_fraction() {
    let e = parse(SEVEN_CANDIDATES);
    let mut buf = vec![0 as c_char; 32];
    let mut needed = 0;
    let target = mask(e, &["a", "b", "c"]);
    assert_eq!(
        unsafe { ad_maxmin_support(e, target, buf.as_mut_ptr(), buf.len(), &mut needed) },
        AdStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string();
    // 25500 supporters spread evenly over three candidates
    assert_eq!(text, "8500");
    assert_eq!(needed, 5);

    let mut tiny = [0 as c_char; 2];
    assert_eq!(
        unsafe { ad_maxmin_support(e, target, tiny.as_mut_ptr(), tiny.len(), &mut needed) },
        AdStatus::BufferTooSmall
    );
    assert_eq!(needed, 5);
    assert_eq!(
        unsafe { ad_maxmin_support(e, 1 << 40, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) },
        AdStatus::InvalidArgument
    );
    unsafe { ad_election_free(e) };
}

#[test]
fn checks_axioms() {
    let e = parse("candidates: a b c d\nseats: 3\nballot 3: a c d\nballot 2: b\n");
    let av = CString::new("av").unwrap();
    let odh = CString::new("odh").unwrap();
    let jr = CString::new("jr").unwrap();
    let mut v = AdVerdict::Inconclusive;
    assert_eq!(
        unsafe { ad_check_axiom(e, av.as_ptr(), jr.as_ptr(), AdTieMode::Enumerated, &mut v) },
        AdStatus::Ok
    );
    assert_eq!(v, AdVerdict::Violated);
    assert_eq!(
        unsafe { ad_check_axiom(e, odh.as_ptr(), jr.as_ptr(), AdTieMode::Enumerated, &mut v) },
        AdStatus::Ok
    );
    assert_eq!(v, AdVerdict::Satisfied);
    let bogus = CString::new("no-such-axiom").unwrap();
    assert_eq!(
        unsafe { ad_check_axiom(e, odh.as_ptr(), bogus.as_ptr(), AdTieMode::Enumerated, &mut v) },
        AdStatus::InvalidArgument
    );
    assert!(last_error().contains("no-such-axiom"));
    unsafe { ad_election_free(e) };
}

#[test]
fn reports_errors() {
    let bad = CString::new("candidates: a b\nseats: 1\nballot 2: zz\n").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { ad_election_parse(bad.as_ptr(), &mut e) }, AdStatus::ParseError);
    assert!(e.is_null());
    assert!(last_error().starts_with("3:11:"), "{}", last_error());

    assert_eq!(unsafe { ad_election_parse(ptr::null(), &mut e) }, AdStatus::NullPointer);
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { ad_election_parse(invalid.as_ptr(), &mut e) }, AdStatus::InvalidUtf8);

    let ok = parse(SEVEN_CANDIDATES);
    let unknown = CString::new("borda").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { ad_compute(ok, unknown.as_ptr(), AdTieMode::Deterministic, &mut r) },
        AdStatus::InvalidArgument
    );
    assert_eq!(unsafe { ad_election_num_candidates(ptr::null()) }, 0);
    unsafe {
        ad_election_free(ptr::null_mut());
        ad_report_free(ptr::null_mut());
        ad_election_free(ok);
    }
}

#[test]
fn oodh_cap_is_reported() {
    let labels: Vec<String> = (0..40).map(|i| format!("x{i}")).collect();
    let text = format!("candidates: {}\nseats: 10\nballot 5: {}\n", labels.join(" "), labels.join(" "));
    let e = parse(&text);
    let rule = CString::new("oodh").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { ad_compute(e, rule.as_ptr(), AdTieMode::Deterministic, &mut r) },
        AdStatus::CapExceeded
    );
    unsafe { ad_election_free(e) };
}

#[test]
fn header_declares_entry_points() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/approval_dhondt.h")).unwrap();
    for name in [
        "ad_election_parse",
        "ad_compute",
        "ad_report_winner_mask",
        "ad_maxmin_support",
        "ad_check_axiom",
        "ad_last_error",
        "typedef struct AdElection AdElection",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles the C example against the generated header and the static
/// library, when a C compiler is around.
#[test]
fn c_program_links_and_runs() {
    use std::path::PathBuf;
    use std::process::Command;

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libapproval_dhondt_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    // a, c, d are bits 0, 2, 3
    assert_eq!(String::from_utf8_lossy(&out.stdout), "winners=d maxmin=8500 jr=0\n");
}
