use emscat_core::media::{Medium, ProblemSetup};
use emscat_core::formulations::charge_current_block;
use emscat_core::linalg::singular_values;
use emscat_core::{c64, cr, Complex64, I};

fn scan(eps: Complex64, mu: Complex64, eta: Complex64, scale_charges: bool, label: &str) {
    let mut conds = Vec::new();
    let mut worst = (0.0f64, 0.0f64);
    for i in 0..800 {
        let w = 0.05 + (10.0 - 0.05) * i as f64 / 799.0;
        let s = ProblemSetup::new(w, Medium::vacuum(), Medium::new(eps, mu).unwrap()).unwrap();
        let mut smax: f64 = 0.0; let mut smin = f64::INFINITY;
        for n in 0..=s.n_max {
            let b = charge_current_block(n, &s, eta).unwrap();
            let mut e = b.entries.clone();
            if scale_charges {
                // unknowns rho~ = i w rho: divide charge columns by i w
                let cols: &[usize] = if n == 0 { &[0, 1] } else { &[4, 5] };
                for r in 0..b.dim { for &c in cols {
                    e[r * b.dim + c] = e[r * b.dim + c] / (I * w);
                }}
            }
            let sv = singular_values(&e, b.dim);
            smax = smax.max(sv[0]); smin = smin.min(sv[b.dim - 1]);
        }
        let c = smax / smin;
        conds.push(c);
        if c > worst.1 { worst = (w, c); }
    }
    let mut sorted = conds.clone();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    println!("{label}: median={:.3e} max={:.3e} at w={:.3} ratio={:.1}",
        sorted[sorted.len()/2], worst.1, worst.0, worst.1/sorted[sorted.len()/2]);
}

fn main() {
    let (em, mm) = (c64(-2.0, 1.0), c64(-1.0, 1.0));
    scan(em, mm, cr(0.0), true, "cc(0) charge-scaled -2+i");
    scan(em, mm, I, true, "cc(i) charge-scaled -2+i");
    scan(em, mm, cr(1.0), true, "cc(1) charge-scaled -2+i");
}
