#![no_main]

use libfuzzer_sys::fuzz_target;
use star_ics::export::{tree_from_json, tree_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(tree) = tree_from_json(text) else {
        return;
    };
    // anything accepted must survive an export/import cycle unchanged
    let again = tree_from_json(&tree_to_json(&tree)).expect("exported trees reimport");
    assert_eq!(again, tree);
});
