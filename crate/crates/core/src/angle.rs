//! Degree-based angle helpers.
//!
//! Angles are stored in degrees, counter-clockwise positive, normalized to
//! `[0, 360)`. Multiples of 90° evaluate to exact sines and cosines so that
//! axis-aligned constructions stay bit-exact under rotation.

use core::f64::consts::PI;

/// Normalizes an angle in degrees to `[0, 360)`; `-0.0` becomes `0.0`.
pub fn normalize_deg(a: f64) -> f64 {
    let mut r = a % 360.0;
    if r < 0.0 {
        r += 360.0;
    }
    if r >= 360.0 {
        r -= 360.0;
    }
    r + 0.0
}

fn quarter_turns(a: f64) -> Option<u8> {
    let n = normalize_deg(a);
    if n == 0.0 {
        Some(0)
    } else if n == 90.0 {
        Some(1)
    } else if n == 180.0 {
        Some(2)
    } else if n == 270.0 {
        Some(3)
    } else {
        None
    }
}

pub fn to_rad(deg: f64) -> f64 {
    deg * (PI / 180.0)
}

pub fn to_deg(rad: f64) -> f64 {
    rad * (180.0 / PI)
}

/// `(cos, sin)` of an angle in degrees.
pub fn cos_sin_deg(a: f64) -> (f64, f64) {
    match quarter_turns(a) {
        Some(0) => (1.0, 0.0),
        Some(1) => (0.0, 1.0),
        Some(2) => (-1.0, 0.0),
        Some(3) => (0.0, -1.0),
        _ => {
            let r = to_rad(normalize_deg(a));
            (libm::cos(r), libm::sin(r))
        }
    }
}

/// Direction of the vector `(x, y)` in degrees, normalized.
pub fn atan2_deg(y: f64, x: f64) -> f64 {
    if y == 0.0 && x > 0.0 {
        return 0.0;
    }
    if x == 0.0 && y > 0.0 {
        return 90.0;
    }
    if y == 0.0 && x < 0.0 {
        return 180.0;
    }
    if x == 0.0 && y < 0.0 {
        return 270.0;
    }
    normalize_deg(to_deg(libm::atan2(y, x)))
}

/// CCW sweep from `start` to `end`, in `[0, 360)`.
pub fn sweep_deg(start: f64, end: f64) -> f64 {
    normalize_deg(end - start)
}

/// Smallest absolute difference between two angles, in `[0, 180]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = normalize_deg(a - b);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}
