#![no_main]

use libfuzzer_sys::fuzz_target;
use rankdist::WeightTable;

fuzz_target!(|data: &str| {
    if let Ok(table) = WeightTable::from_json(data) {
        let w = table.default_weight();
        assert!(w.is_finite() && w > 0.0);
    }
});
