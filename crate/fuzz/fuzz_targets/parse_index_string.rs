#![no_main]

use libfuzzer_sys::fuzz_target;
use star_ics::lambda::{class_size, node_attrs, IndexString};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(id) = text.parse::<IndexString>() else {
        return;
    };
    let compact: IndexString = id.compact().parse().expect("compact form reparses");
    assert_eq!(compact, id);
    for n in [2usize, 9, 16, 40] {
        if id.is_admissible(n) {
            let attrs = node_attrs(&id, n).expect("admissible strings have attributes");
            assert_eq!(attrs.weight, id.last() + id.depth());
            assert_eq!(attrs.d, attrs.a * attrs.b);
            class_size(&id, n).expect("admissible strings have cardinalities");
        }
    }
});
