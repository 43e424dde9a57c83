//! The cubic order bound `|G| < |G_x|³` rules out Sz(q) acting with
//! stabilizer `D_{2(q-1)}`: `q²(q²+1)(q-1) >= (2(q-1))³` for every
//! `q = 2^(2m+1) >= 8`. Pure arithmetic, no group is built.

use serde_json::json;

use crate::report::{timed, VerificationReport};

/// Exponents `2m + 1` for `8 <= q <= 2^15`.
pub const DEFAULT_EXPONENTS: [u32; 7] = [3, 5, 7, 9, 11, 13, 15];

pub fn suzuki_order(q: u128) -> u128 {
    q * q * (q * q + 1) * (q - 1)
}

pub fn order_bound_scan(exponents: &[u32]) -> VerificationReport {
    timed("suzuki-cubic-bound", |r| {
        r.precondition("q = 2^e with e odd, 3 <= e <= 15");
        for &e in exponents {
            if e % 2 == 0 || !(3..=31).contains(&e) {
                r.skip(format!("exponent {e} is not odd or is out of range"));
                continue;
            }
            let q = 1u128 << e;
            let order = suzuki_order(q);
            let cube = (2 * (q - 1)).pow(3);
            let w = json!({ "q": q.to_string(), "order": order.to_string(), "stabilizer_cubed": cube.to_string() });
            r.expect(order >= cube, || w.clone());
            r.witness(w);
        }
        Ok(())
    })
}
