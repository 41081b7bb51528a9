#![allow(dead_code)]

use qsing_core::MarkedQuiverSetting;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Bounds {
    pub max_vertices: usize,
    pub max_dim: u32,
    pub max_arrows: u32,
    pub strongly_connected: bool,
}

pub const SMALL: Bounds = Bounds {
    max_vertices: 5,
    max_dim: 3,
    max_arrows: 3,
    strongly_connected: true,
};

pub fn random_setting(rng: &mut ChaCha8Rng, b: &Bounds) -> MarkedQuiverSetting {
    loop {
        let k = rng.gen_range(1..=b.max_vertices);
        let alpha: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=b.max_dim)).collect();
        let mut arrows = vec![0u32; k * k];
        for (i, a) in arrows.iter_mut().enumerate() {
            let p = if i / k == i % k { 0.3 } else { 0.45 };
            if rng.gen_bool(p) {
                *a = rng.gen_range(1..=b.max_arrows);
            }
        }
        let marked: Vec<u32> = alpha
            .iter()
            .map(|&a| if a > 1 && rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 })
            .collect();
        let s = MarkedQuiverSetting::from_flat(alpha, arrows, marked).unwrap();
        if !b.strongly_connected || s.is_strongly_connected() {
            return s;
        }
    }
}

pub fn random_permutation(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Plain search over all `k!` relabellings.
pub fn brute_force_isomorphic(a: &MarkedQuiverSetting, b: &MarkedQuiverSetting) -> bool {
    let k = a.vertex_count();
    if k != b.vertex_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    fn rec(
        a: &MarkedQuiverSetting,
        b: &MarkedQuiverSetting,
        perm: &mut Vec<usize>,
        start: usize,
    ) -> bool {
        if start == perm.len() {
            return a.permute(perm) == *b;
        }
        for i in start..perm.len() {
            perm.swap(start, i);
            if rec(a, b, perm, start + 1) {
                return true;
            }
            perm.swap(start, i);
        }
        false
    }
    rec(a, b, &mut perm, 0)
}
