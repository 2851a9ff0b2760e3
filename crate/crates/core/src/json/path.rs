use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    Label(String),
    /// Any element of an array.
    Wildcard,
}

/// A labeled path from a document root, e.g. `/geometries[*]`.
///
/// The root path has no segments. Labels are escaped in the rendering
/// (`~` as `~0`, `/` as `~1`, `[` as `~2`) so distinct paths never render to
/// the same text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathKey {
    segments: Vec<Segment>,
}

impl PathKey {
    pub fn root() -> Self {
        PathKey::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_root(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn child(&self, label: &str) -> PathKey {
        let mut segments = self.segments.clone();
        segments.push(Segment::Label(label.to_owned()));
        PathKey { segments }
    }

    pub fn items(&self) -> PathKey {
        let mut segments = self.segments.clone();
        segments.push(Segment::Wildcard);
        PathKey { segments }
    }

    /// Canonical text; the root renders as the empty string.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for seg in &self.segments {
            match seg {
                Segment::Label(l) => {
                    out.push('/');
                    for c in l.chars() {
                        match c {
                            '~' => out.push_str("~0"),
                            '/' => out.push_str("~1"),
                            '[' => out.push_str("~2"),
                            c => out.push(c),
                        }
                    }
                }
                Segment::Wildcard => out.push_str("[*]"),
            }
        }
        out
    }

    /// Inverse of [`PathKey::render`].
    pub fn parse(text: &str) -> Option<PathKey> {
        let mut segments = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("[*]") {
                segments.push(Segment::Wildcard);
                rest = r;
            } else {
                let r = rest.strip_prefix('/')?;
                let end = r.find(['/', '[']).unwrap_or(r.len());
                let raw = &r[..end];
                let mut label = String::new();
                let mut chars = raw.chars();
                while let Some(c) = chars.next() {
                    if c == '~' {
                        match chars.next()? {
                            '0' => label.push('~'),
                            '1' => label.push('/'),
                            '2' => label.push('['),
                            _ => return None,
                        }
                    } else {
                        label.push(c);
                    }
                }
                segments.push(Segment::Label(label));
                rest = &r[end..];
            }
        }
        Some(PathKey { segments })
    }
}

impl fmt::Display for PathKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_root() {
            f.write_str("(root)")
        } else {
            f.write_str(&self.render())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_like_jsonpath_wildcards() {
        let p = PathKey::root().child("geometries").items();
        assert_eq!(p.render(), "/geometries[*]");
        assert_eq!(PathKey::root().items().child("x").render(), "[*]/x");
        assert_eq!(PathKey::root().to_string(), "(root)");
    }

    fn segment() -> impl Strategy<Value = Segment> {
        prop_oneof![
            Just(Segment::Wildcard),
            "[a-z/~\\[\\]*]{0,4}".prop_map(Segment::Label),
        ]
    }

    proptest! {
        #[test]
        fn rendering_is_injective(a in prop::collection::vec(segment(), 0..5),
                                  b in prop::collection::vec(segment(), 0..5)) {
            let pa = PathKey { segments: a };
            let pb = PathKey { segments: b };
            prop_assert_eq!(pa == pb, pa.render() == pb.render());
            prop_assert_eq!(PathKey::parse(&pa.render()), Some(pa));
        }
    }
}
