#![allow(dead_code)]

use num_bigint::BigInt;
use principal_basis::rootsys::{Family, LieType};

pub fn t(s: &str) -> LieType {
    s.parse().unwrap()
}

/// Every valid type with rank at most `max_rank`.
pub fn types_up_to(max_rank: usize) -> Vec<LieType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for rank in 1..=max_rank {
            if let Ok(lt) = LieType::new(family, rank) {
                out.push(lt);
            }
        }
    }
    out
}

pub fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
