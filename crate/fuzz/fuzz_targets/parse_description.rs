#![no_main]
use libfuzzer_sys::fuzz_target;

use refex::Description;

fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(description) = source.parse::<Description>() {
        // rendering sorts and trims; the item set must survive a reparse
        let reparsed: Description = description.to_string().parse().unwrap();
        assert_eq!(reparsed.sorted(), description.sorted());
    }
});
