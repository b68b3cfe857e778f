#![no_main]
use libfuzzer_sys::fuzz_target;

use refex::GenreProfile;

fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(genre) = GenreProfile::from_json(source) {
        assert_eq!(GenreProfile::from_json(&genre.to_json()).unwrap(), genre);
    }
});
