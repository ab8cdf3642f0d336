//! Matrix groups over small prime fields as multiplication tables. These
//! seed the classes that no prime-index normal subgroup reaches: the
//! perfect groups in the catalogue's range are A5, SL(2,5), and
//! PSL(2,7) = GL(3,2), and A5 already has a one-line constructor.

use std::collections::HashMap;

use prodquot_core::group::{Elem, GroupTable};

/// All k x k matrices over F_p passing `keep`, closed under multiplication,
/// with the identity first. Matrices are flat row-major vectors.
fn matrix_group(k: usize, p: u16, keep: impl Fn(&[u16]) -> bool) -> GroupTable {
    let cells = k * k;
    let total = (p as usize).pow(cells as u32);
    let mut mats: Vec<Vec<u16>> = Vec::new();
    let identity: Vec<u16> =
        (0..cells).map(|c| u16::from(c / k == c % k)).collect();
    mats.push(identity.clone());
    for code in 0..total {
        let mut m = vec![0u16; cells];
        let mut rest = code;
        for cell in m.iter_mut() {
            *cell = (rest % p as usize) as u16;
            rest /= p as usize;
        }
        if m != identity && keep(&m) {
            mats.push(m);
        }
    }
    let index: HashMap<Vec<u16>, usize> =
        mats.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = mats.len();
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut prod = vec![0u16; cells];
            for i in 0..k {
                for j in 0..k {
                    let mut s = 0u32;
                    for l in 0..k {
                        s += mats[a][i * k + l] as u32 * mats[b][l * k + j] as u32;
                    }
                    prod[i * k + j] = (s % p as u32) as u16;
                }
            }
            mul[a * n + b] = index[&prod] as Elem;
        }
    }
    GroupTable::from_mul_table(n, mul).expect("matrix set closed under multiplication")
}

fn det2(m: &[u16], p: u16) -> u16 {
    let (a, b, c, d) = (m[0] as i32, m[1] as i32, m[2] as i32, m[3] as i32);
    (a * d - b * c).rem_euclid(p as i32) as u16
}

fn det3(m: &[u16], p: u16) -> u16 {
    let v: Vec<i32> = m.iter().map(|&x| x as i32).collect();
    let det = v[0] * (v[4] * v[8] - v[5] * v[7]) - v[1] * (v[3] * v[8] - v[5] * v[6])
        + v[2] * (v[3] * v[7] - v[4] * v[6]);
    det.rem_euclid(p as i32) as u16
}

pub fn sl2_5() -> GroupTable {
    let g = matrix_group(2, 5, |m| det2(m, 5) == 1);
    assert_eq!(g.order(), 120);
    g
}

pub fn sl2_3() -> GroupTable {
    let g = matrix_group(2, 3, |m| det2(m, 3) == 1);
    assert_eq!(g.order(), 24);
    g
}

pub fn gl3_2() -> GroupTable {
    let g = matrix_group(3, 2, |m| det3(m, 2) == 1);
    assert_eq!(g.order(), 168);
    g
}
