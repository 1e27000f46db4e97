//! Binary PPM (P6) rendering of a field or ink layer.

use crate::error::{Result, SwarmError};
use crate::habitat::CanvasField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl std::fmt::Display for Rgb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}, {}, {}", self.0, self.1, self.2)
    }
}

impl std::str::FromStr for Rgb {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected `r, g, b`, got `{s}`"));
        }
        let mut c = [0u8; 3];
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| format!("color component `{p}` is not an integer in 0..=255"))?;
        }
        Ok(Rgb(c[0], c[1], c[2]))
    }
}

const DEFAULT_COLORS: [Rgb; 6] = [
    Rgb(255, 0, 0),
    Rgb(0, 255, 0),
    Rgb(0, 0, 255),
    Rgb(255, 255, 0),
    Rgb(255, 0, 255),
    Rgb(0, 255, 255),
];

/// Per-channel ink colors, background, and exposure of the tone map
/// `1 - exp(-exposure * v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    pub colors: Vec<Rgb>,
    pub background: Rgb,
    pub exposure: f64,
}

impl Palette {
    /// Primaries first, then secondaries, cycling for larger channel counts.
    pub fn default_for(channels: usize) -> Self {
        Palette {
            colors: (0..channels)
                .map(|c| DEFAULT_COLORS[c % DEFAULT_COLORS.len()])
                .collect(),
            background: Rgb(0, 0, 0),
            exposure: 0.6,
        }
    }

    pub fn validate(&self, channels: usize) -> Result<()> {
        if self.colors.len() != channels {
            return Err(SwarmError::param(
                "palette",
                format!("{} colors for {} channels", self.colors.len(), channels),
            ));
        }
        if !(self.exposure.is_finite() && self.exposure > 0.0) {
            return Err(SwarmError::param("exposure", "must be finite and > 0"));
        }
        Ok(())
    }
}

fn header(width: usize, height: usize) -> Vec<u8> {
    format!("P6\n{width} {height}\n255\n").into_bytes()
}

/// Render a `(y, x, c)` intensity layer. Each pixel is
/// `background + sum_c tone(v_c) * color_c`, clamped to 255 and rounded to
/// nearest.
pub fn render_layer(
    values: &[f64],
    width: usize,
    height: usize,
    channels: usize,
    palette: &Palette,
) -> Result<Vec<u8>> {
    palette.validate(channels)?;
    if values.len() != width * height * channels {
        return Err(SwarmError::param(
            "values",
            "layer size does not match dimensions",
        ));
    }
    let mut out = header(width, height);
    out.reserve(width * height * 3);
    let bg = [
        palette.background.0 as f64,
        palette.background.1 as f64,
        palette.background.2 as f64,
    ];
    for px in values.chunks_exact(channels) {
        let mut rgb = bg;
        for (v, color) in px.iter().zip(&palette.colors) {
            let tone = 1.0 - (-palette.exposure * v).exp();
            rgb[0] += tone * color.0 as f64;
            rgb[1] += tone * color.1 as f64;
            rgb[2] += tone * color.2 as f64;
        }
        out.extend(rgb.iter().map(|c| c.clamp(0.0, 255.0).round() as u8));
    }
    Ok(out)
}

/// Render the live field.
pub fn render_image(field: &CanvasField, palette: &Palette) -> Result<Vec<u8>> {
    render_layer(
        field.values(),
        field.width(),
        field.height(),
        field.channels(),
        palette,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::habitat::{Boundary, Cell};

    #[test]
    fn blank_one_by_one() {
        let f = CanvasField::new(1, 1, 1, Boundary::Bounded).unwrap();
        let bytes = render_image(&f, &Palette::default_for(1)).unwrap();
        assert_eq!(bytes, b"P6\n1 1\n255\n\x00\x00\x00");
    }

    #[test]
    fn blank_is_background() {
        let f = CanvasField::new(5, 3, 2, Boundary::Bounded).unwrap();
        let p = Palette {
            background: Rgb(10, 20, 30),
            ..Palette::default_for(2)
        };
        let bytes = render_image(&f, &p).unwrap();
        let body = &bytes[b"P6\n5 3\n255\n".len()..];
        assert_eq!(body.len(), 45);
        assert!(body.chunks(3).all(|px| px == [10, 20, 30]));
    }

    #[test]
    fn saturated_red_cell() {
        let mut f = CanvasField::new(1, 1, 1, Boundary::Bounded).unwrap();
        f.deposit(Cell::new(0, 0), 0, 10.0).unwrap();
        let p = Palette {
            exposure: 1.0,
            ..Palette::default_for(1)
        };
        // 255 (1 - e^-10) = 254.988...
        let bytes = render_image(&f, &p).unwrap();
        assert_eq!(&bytes[bytes.len() - 3..], &[255, 0, 0]);
    }

    #[test]
    fn palette_mismatch_is_rejected() {
        let f = CanvasField::new(2, 2, 3, Boundary::Bounded).unwrap();
        assert!(render_image(&f, &Palette::default_for(2)).is_err());
    }

    #[test]
    fn rgb_parse() {
        assert_eq!("1, 2,3".parse::<Rgb>().unwrap(), Rgb(1, 2, 3));
        assert!("1,2".parse::<Rgb>().is_err());
        assert!("1,2,256".parse::<Rgb>().is_err());
    }
}
