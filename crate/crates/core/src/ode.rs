//! Classical fixed-step fourth-order Runge–Kutta for small dense systems.
//!
//! The state update is accumulated with Kahan compensation so that over a
//! few thousand steps the rounding drift stays below the method's own
//! truncation error.

/// RK4 integrator state for an `N`-dimensional system `y' = f(s, y)`.
#[derive(Clone, Debug)]
pub struct Rk4<const N: usize> {
    pub s: f64,
    pub y: [f64; N],
    comp: [f64; N],
}

impl<const N: usize> Rk4<N> {
    pub fn new(s: f64, y: [f64; N]) -> Self {
        Rk4 {
            s,
            y,
            comp: [0.0; N],
        }
    }

    /// Advances by one step of size `h`. `s_next` is the abscissa after the
    /// step; passing it explicitly keeps grids like `s0 + i·h` free of
    /// accumulated drift.
    pub fn step<F>(&mut self, h: f64, s_next: f64, mut f: F)
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let s = self.s;
        let half = 0.5 * h;
        let k1 = f(s, &self.y);
        let k2 = f(s + half, &offset(&self.y, &k1, half));
        let k3 = f(s + half, &offset(&self.y, &k2, half));
        let k4 = f(s + h, &offset(&self.y, &k3, h));
        for i in 0..N {
            let dy = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            let t = dy - self.comp[i];
            let z = self.y[i] + t;
            self.comp[i] = (z - self.y[i]) - t;
            self.y[i] = z;
        }
        self.s = s_next;
    }

    /// Overwrites the state, e.g. after a projection step.
    pub fn reset_state(&mut self, y: [f64; N]) {
        self.y = y;
        self.comp = [0.0; N];
    }
}

fn offset<const N: usize>(y: &[f64; N], k: &[f64; N], h: f64) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}
