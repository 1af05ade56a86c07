//! One-off dump for external cross-validation of the elliptic kernel.
use rotsurf::elliptic::*;

fn main() {
    let mut state = 0x1234_5678_9abc_def0u64;
    let mut rnd = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..400 {
        let u = 30.0 * rnd() - 15.0;
        let p = rnd().min(0.9999);
        let m = EllipticModulus::new(p).unwrap();
        let t = jacobi(u, m).unwrap();
        let phi = 6.0 * rnd() - 3.0;
        let f = ell_f(phi, m).unwrap();
        let e = ell_e(phi, m).unwrap();
        let eps = ell_e_arg(u, m).unwrap();
        println!("{u:.17e} {p:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {phi:.17e} {f:.17e} {e:.17e} {eps:.17e}", t.sn, t.cn, t.dn, t.am);
    }
}
