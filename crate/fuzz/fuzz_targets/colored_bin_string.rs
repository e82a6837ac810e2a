#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| zred_cli::fuzzing::colored_bin_string(data));
