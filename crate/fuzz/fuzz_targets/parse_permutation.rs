#![no_main]

use libfuzzer_sys::fuzz_target;
use star_ics::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = text.parse::<Permutation>() else {
        return;
    };
    // accepted words must round-trip and admit the derived views
    let again: Permutation = p.to_string().parse().expect("formatted words reparse");
    assert_eq!(again, p);
    let key = p.ics_key();
    assert!(key.fits_in(p.n()));
    assert_eq!(key.weight(), p.weight());
    let id = p.index_string();
    assert!(id.is_admissible(p.n()));
});
