#![no_main]

use libfuzzer_sys::fuzz_target;
use rankdist::measures::dg_bounds;
use rankdist::{compare, parse_ranked_list, ListFormat, WeightTable};

// Input layout: first list, NUL, second list, NUL, optional weight JSON.
fuzz_target!(|data: &str| {
    let mut parts = data.splitn(3, '\0');
    let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
        return;
    };
    let table = match parts.next() {
        Some(w) => match WeightTable::from_json(w) {
            Ok(t) => t,
            Err(_) => return,
        },
        None => WeightTable::unit(),
    };
    let (Ok(a), Ok(b)) = (
        parse_ranked_list(a, ListFormat::detect(a)),
        parse_ranked_list(b, ListFormat::detect(b)),
    ) else {
        return;
    };
    if let Ok(report) = compare(&a, &b, &table) {
        assert!(report.footrule_raw >= 0.0 && report.kendall_raw >= 0.0);
        // S <= 2K holds for every positive weighting.
        let (_, upper) = dg_bounds(report.kendall_raw, report.footrule_raw);
        assert!(upper);
    }
});
