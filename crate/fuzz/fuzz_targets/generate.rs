#![no_main]
use libfuzzer_sys::fuzz_target;

use refex::describe::{full_brevity, greedy_heuristic, incremental, IncrementalOptions};
use refex::hearer::resolve;
use refex::{ContextSet, GenreProfile, KnowledgeBase};

// Every description any strategy returns must pick out its referent alone.
fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(kb) = KnowledgeBase::from_json(source) else {
        return;
    };
    if kb.is_empty() || kb.len() > 16 || kb.entities().any(|e| e.property_count() > 12) {
        return;
    }
    let context = ContextSet::all(&kb).unwrap();
    let genre = GenreProfile::casual();
    for referent in kb.ids() {
        let outputs = [
            full_brevity(referent, &context, &kb).ok(),
            greedy_heuristic(referent, &context, &kb)
                .ok()
                .map(|(d, _)| d),
            incremental(
                referent,
                &context,
                &kb,
                &genre,
                IncrementalOptions::default(),
            )
            .ok()
            .map(|o| o.description),
        ];
        let found = outputs.iter().filter(|o| o.is_some()).count();
        assert!(
            found == 0 || found == 3,
            "strategies disagree on existence for {referent}"
        );
        for d in outputs.into_iter().flatten() {
            assert!(resolve(&d, &context, &kb).unwrap().is_unique(referent));
        }
    }
});
