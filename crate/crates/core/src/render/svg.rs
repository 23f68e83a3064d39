//! Minimal SVG text builder with fixed-precision numeric attributes.

use std::fmt::Write as _;

/// Fixed 3-decimal rendering used for every numeric attribute.
pub fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Attribute value: either a number (rounded) or literal text (escaped).
pub enum Attr<'a> {
    N(f64),
    S(&'a str),
}

impl From<f64> for Attr<'_> {
    fn from(v: f64) -> Self {
        Attr::N(v)
    }
}

impl<'a> From<&'a str> for Attr<'a> {
    fn from(v: &'a str) -> Self {
        Attr::S(v)
    }
}

pub struct SvgWriter {
    buf: String,
}

impl SvgWriter {
    pub fn new(width: f64, height: f64) -> Self {
        let mut buf = String::new();
        buf.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0.000 0.000 {w} {h}\" font-family=\"sans-serif\">",
            w = num(width),
            h = num(height)
        );
        let mut writer = SvgWriter { buf };
        writer.element(
            "rect",
            &[
                ("class", "background".into()),
                ("x", 0.0.into()),
                ("y", 0.0.into()),
                ("width", width.into()),
                ("height", height.into()),
                ("fill", "#ffffff".into()),
            ],
        );
        writer
    }

    fn attrs(&mut self, attrs: &[(&str, Attr<'_>)]) {
        for (name, value) in attrs {
            let value = match value {
                Attr::N(v) => num(*v),
                Attr::S(s) => escape(s),
            };
            let _ = write!(self.buf, " {name}=\"{value}\"");
        }
    }

    /// Self-closing element.
    pub fn element(&mut self, tag: &str, attrs: &[(&str, Attr<'_>)]) {
        self.buf.push('<');
        self.buf.push_str(tag);
        self.attrs(attrs);
        self.buf.push_str("/>\n");
    }

    pub fn open_group(&mut self, class: &str) {
        let _ = writeln!(self.buf, "<g class=\"{}\">", escape(class));
    }

    pub fn close_group(&mut self) {
        self.buf.push_str("</g>\n");
    }

    /// `<text>` element. Labels of the form `d^-1` get a superscript exponent.
    pub fn text(&mut self, content: &str, attrs: &[(&str, Attr<'_>)]) {
        self.buf.push_str("<text");
        self.attrs(attrs);
        self.buf.push('>');
        match content.strip_suffix("^-1") {
            Some(base) => {
                let _ = write!(
                    self.buf,
                    "{}<tspan baseline-shift=\"super\" font-size=\"{}\">-1</tspan>",
                    escape(base),
                    num(8.0)
                );
            }
            None => self.buf.push_str(&escape(content)),
        }
        self.buf.push_str("</text>\n");
    }

    /// `<polygon>` with the given vertices.
    pub fn polygon(&mut self, points: &[(f64, f64)], attrs: &[(&str, Attr<'_>)]) {
        self.buf.push_str("<polygon points=\"");
        for (i, (x, y)) in points.iter().enumerate() {
            if i > 0 {
                self.buf.push(' ');
            }
            let _ = write!(self.buf, "{},{}", num(*x), num(*y));
        }
        self.buf.push('"');
        self.attrs(attrs);
        self.buf.push_str("/>\n");
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}
