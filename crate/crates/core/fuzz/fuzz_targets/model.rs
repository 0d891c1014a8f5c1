#![no_main]

use libfuzzer_sys::fuzz_target;
use verso::semantics::{compare_models, Model};

fuzz_target!(|text: &str| {
    if let Ok(m) = Model::parse(text) {
        let again = Model::parse(&m.to_string()).expect("printed model reparses");
        assert!(compare_models(&m, &again).is_empty());
        let _ = m.check_indices();
    }
});
