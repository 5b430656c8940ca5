//! The fields `F_2`, `F_3` and `F_4`, elements encoded as `0..q`.
//!
//! `F_4` elements are polynomials `b0 + b1·t` over `F_2` stored as the bit
//! pattern `b1 b0`, with `t² = t + 1`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: u8,
    add: [[u8; 4]; 4],
    mul: [[u8; 4]; 4],
    neg: [u8; 4],
    inv: [u8; 4],
}

fn f4_mul(a: u8, b: u8) -> u8 {
    // Carry-less product, then reduce t² -> t + 1.
    let mut p = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            p ^= a << i;
        }
    }
    if p & 0b100 != 0 {
        p ^= 0b111;
    }
    p
}

impl Field {
    pub fn new(q: u8) -> Option<Field> {
        let mut add = [[0u8; 4]; 4];
        let mut mul = [[0u8; 4]; 4];
        for a in 0..q {
            for b in 0..q {
                let (s, m) = match q {
                    2 | 3 => ((a + b) % q, (a * b) % q),
                    4 => (a ^ b, f4_mul(a, b)),
                    _ => return None,
                };
                add[a as usize][b as usize] = s;
                mul[a as usize][b as usize] = m;
            }
        }
        let mut neg = [0u8; 4];
        let mut inv = [0u8; 4];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[a as usize][b as usize] == 0)?;
            if a != 0 {
                inv[a as usize] = (1..q).find(|&b| mul[a as usize][b as usize] == 1)?;
            }
        }
        Some(Field { q, add, mul, neg, inv })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn elements(&self) -> std::ops::Range<u8> {
        0..self.q
    }
}
