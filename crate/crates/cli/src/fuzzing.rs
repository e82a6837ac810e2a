//! Bodies of the fuzz targets, shared with the seed-replay test so the
//! checked-in corpus runs on stable on every `cargo test`.
//!
//! Each function must return normally on any input. Parse errors are fine;
//! panics are bugs, and so is a parsed value that fails to round-trip.

use num_traits::ToPrimitive;
use zred::contfrac::{denjoy_surd, neg_cf_surd, reg_cf_surd};
use zred::forms::parse_int;
use zred::{BinString, ColoredBinString, Form, NatString, QuadraticSurd};

use crate::parse_fraction;

pub type Target = fn(&[u8]);

/// Every target by name, in corpus-directory order.
pub const TARGETS: [(&str, Target); 7] = [
    ("form_json", form_json),
    ("nat_string", nat_string),
    ("bin_string", bin_string),
    ("colored_bin_string", colored_bin_string),
    ("fraction", fraction),
    ("surd_args", surd_args),
    ("cli_args", cli_args),
];

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn form_json(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(f) = Form::from_json(s) {
        assert_eq!(Form::from_json(&f.to_json()).unwrap(), f);
        let _ = f.is_z_reduced();
        let _ = f.is_g_reduced();
    }
}

pub fn nat_string(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(q) = s.parse::<NatString>() {
        assert_eq!(q.to_string().parse::<NatString>().unwrap(), q);
        // Tiny strings are cheap to push through the string-to-form maps.
        if q.len() <= 16 && q.iter().all(|e| e.to_u32().is_some_and(|v| v <= 1000)) {
            let _ = zred::maps::tau(&q);
            let _ = zred::maps::xi(&q);
            let _ = zred::strings::sb(&q);
        }
    }
}

pub fn bin_string(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(b) = s.parse::<BinString>() {
        assert_eq!(b.to_string(), s);
        if let Ok(q) = zred::strings::sb_inv(&b) {
            assert_eq!(zred::strings::sb(&q).unwrap(), b);
        }
        let _ = zred::strings::rotate_bin(&b);
    }
}

pub fn colored_bin_string(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(c) = s.parse::<ColoredBinString>() {
        assert_eq!(c.to_string(), s);
        let _ = zred::AlternatingNecklace::of(&c).representative();
    }
}

pub fn fraction(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok((num, den)) = parse_fraction(s) {
        for parity in [zred::Parity::Odd, zred::Parity::Even] {
            if let Ok(q) = zred::contfrac::cf_expand(&num, &den, parity) {
                assert_eq!(zred::Parity::of(q.len()), parity);
            }
        }
    }
}

/// `P Q Δ n`: builds `(P + √Δ)/Q` and expands `n` terms of each kind.
pub fn surd_args(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let parts: Vec<&str> = s.split_whitespace().collect();
    let [p, q, d, n] = parts[..] else { return };
    let (Ok(p), Ok(q), Ok(d)) = (parse_int(p), parse_int(q), parse_int(d)) else {
        return;
    };
    let Ok(n) = n.parse::<usize>() else { return };
    let n = n.min(64);
    let Ok(x) = QuadraticSurd::new(p, q, d) else {
        return;
    };
    if let Ok(bits) = denjoy_surd(&x, n) {
        assert!(!bits.to_string().contains("00"), "{x}: {bits}");
    }
    if let Ok(neg) = neg_cf_surd(&x, n) {
        assert!(neg.iter().all(|a| *a >= 2u32.into()), "{x}: {neg}");
    }
    if let Ok(reg) = reg_cf_surd(&x, n) {
        assert!(reg.iter().skip(1).all(|a| *a >= 1u32.into()));
    }
}

/// Whitespace-separated argv for the CLI. Running time grows with the
/// numbers involved (orbit lengths, cycle enumeration, verification bounds),
/// so `verify` is skipped and every digit run is kept short.
pub fn cli_args(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let args: Vec<&str> = s.split_whitespace().collect();
    let long_number = s
        .split(|c: char| !c.is_ascii_digit())
        .any(|run| run.len() > 4);
    if long_number || args.contains(&"verify") {
        return;
    }
    let out = crate::run(std::iter::once("zred").chain(args));
    assert_ne!(out.code, crate::EXIT_INTERNAL, "{s:?}: {}", out.stderr);
}
