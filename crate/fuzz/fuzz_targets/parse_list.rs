#![no_main]

use libfuzzer_sys::fuzz_target;
use rankdist::{parse_ranked_list, ListFormat};

fuzz_target!(|data: &str| {
    for format in [ListFormat::detect(data), ListFormat::Plain, ListFormat::Json] {
        if let Ok(list) = parse_ranked_list(data, format) {
            // Accepted lists are duplicate-free and rank lookups agree with order.
            for (i, token) in list.iter().enumerate() {
                assert_eq!(list.rank_of(token), Some(i + 1));
            }
        }
    }
});
