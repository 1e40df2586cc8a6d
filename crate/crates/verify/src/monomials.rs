use modring_core::HalfWeight;

/// Exponent vectors `e` with `sum e_i w_i = k`, in descending lexicographic order.
pub fn weighted_monomials(weights: &[HalfWeight], k: HalfWeight) -> Vec<Vec<u32>> {
    let w: Vec<u32> = weights.iter().map(|w| w.doubled()).collect();
    let mut out = vec![];
    let mut cur = vec![0u32; w.len()];
    fill(&w, 0, k.doubled(), &mut cur, &mut out);
    out
}

fn fill(w: &[u32], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == w.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if w[i] == 0 {
        cur[i] = 0;
        fill(w, i + 1, rest, cur, out);
        return;
    }
    for e in (0..=rest / w[i]).rev() {
        cur[i] = e;
        fill(w, i + 1, rest - e * w[i], cur, out);
    }
    cur[i] = 0;
}

/// Number of monomials of each doubled weight `0..=max_doubled`.
pub fn monomial_counts(weights: &[HalfWeight], max_doubled: usize) -> Vec<i64> {
    let mut c = vec![0i64; max_doubled + 1];
    c[0] = 1;
    for w in weights {
        let w = w.doubled() as usize;
        for i in w..=max_doubled {
            c[i] += c[i - w];
        }
    }
    c
}
