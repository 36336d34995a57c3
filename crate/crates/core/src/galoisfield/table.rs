//! Small finite fields with precomputed operation tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::{build_extension, FieldError, PrimeField};
use crate::polyring::ring::{Field, FiniteField, Ring};

/// Largest order for which tables are built.
pub const MAX_TABLE_ORDER: u128 = 1400;

struct Tables {
    p: u64,
    k: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// `F_q` with elements represented by their enumeration index (so `0` and `1`
/// are the zero and one, and `0..p` is the prime subfield).
#[derive(Clone)]
pub struct TableField {
    t: Arc<Tables>,
}

impl fmt::Debug for TableField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.t.p, self.t.k)
    }
}

impl TableField {
    pub fn from_field<K: FiniteField>(field: &K) -> Result<Self, FieldError> {
        let q = field.order();
        if q > MAX_TABLE_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        let q = q as usize;
        let elems: Vec<K::Elem> = (0..q as u128).map(|i| field.element(i)).collect();
        let idx = |e: &K::Elem| field.index_of(e) as u32;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in a..q {
                let s = idx(&field.add(&elems[a], &elems[b]));
                let m = idx(&field.mul(&elems[a], &elems[b]));
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let neg = elems.iter().map(|e| idx(&field.neg(e))).collect();
        let inv = elems.iter().map(|e| field.inv(e).map(|i| idx(&i)).unwrap_or(0)).collect();
        Ok(TableField {
            t: Arc::new(Tables { p: field.prime(), k: field.degree(), q: q as u32, add, mul, neg, inv }),
        })
    }
}

/// Cached table field `F_{p^k}` (extension modulus as in [`build_extension`]).
pub fn table_field(p: u64, k: usize) -> Result<TableField, FieldError> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), TableField>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cache lock").get(&(p, k)) {
        return Ok(f.clone());
    }
    let order = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if order > MAX_TABLE_ORDER {
        return Err(FieldError::TooLarge(order));
    }
    let f = if k == 1 {
        TableField::from_field(&PrimeField::new(p)?)?
    } else {
        TableField::from_field(&build_extension(p, k)?)?
    };
    cache.lock().expect("cache lock").insert((p, k), f.clone());
    Ok(f)
}

impl Ring for TableField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.t.p as i64) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.t.add[(*a * self.t.q + *b) as usize]
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.t.neg[*b as usize])
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.t.neg[*a as usize]
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.t.mul[(*a * self.t.q + *b) as usize]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u32, b: &u32) -> Option<u32> {
        self.div(a, b)
    }
}

impl Field for TableField {
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.t.inv[*a as usize])
    }
    fn characteristic(&self) -> u64 {
        self.t.p
    }
}

impl FiniteField for TableField {
    fn order(&self) -> u128 {
        self.t.q as u128
    }
    fn prime(&self) -> u64 {
        self.t.p
    }
    fn degree(&self) -> u32 {
        self.t.k
    }
    fn element(&self, index: u128) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u128 {
        *a as u128
    }
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> u32 {
        rng.gen_range(0..self.t.q)
    }
    fn embed_prime(&self, a: u64) -> u32 {
        (a % self.t.p) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_the_source_field() {
        let k = build_extension(3, 3).unwrap();
        let t = table_field(3, 3).unwrap();
        for a in 0..27u128 {
            for b in 0..27u128 {
                let prod = k.mul(&k.element(a), &k.element(b));
                assert_eq!(t.mul(&(a as u32), &(b as u32)) as u128, k.index_of(&prod));
            }
            if a > 0 {
                assert_eq!(t.mul(&(a as u32), &t.inv(&(a as u32)).unwrap()), 1);
            }
        }
        assert!(table_field(41, 2).is_err());
    }
}
