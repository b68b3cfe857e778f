#![no_main]
use libfuzzer_sys::fuzz_target;

use refex::KnowledgeBase;

fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(kb) = KnowledgeBase::from_json(source) {
        let canonical = kb.to_json();
        let reloaded = KnowledgeBase::from_json(&canonical).expect("canonical output must reload");
        assert_eq!(reloaded, kb);
        assert_eq!(reloaded.to_json(), canonical);
    }
});
