use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Position of an object inside a collection: the document it belongs to and
/// the line on which its scope opens in the compact layout (see
/// [`crate::json::print::compact`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId {
    pub document: usize,
    pub line: usize,
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.document, self.line)
    }
}

/// A JSON number that keeps its source lexeme.
///
/// Equality and hashing follow the mathematical value, so `1`, `1.0` and
/// `10e-1` are the same number. Display writes the lexeme back unchanged.
#[derive(Debug, Clone)]
pub struct JsonNumber {
    lexeme: String,
    canonical: Decimal,
}

/// `(-1)^negative * digits * 10^exponent`, with `digits` free of leading and
/// trailing zeros. Zero is `digits == ""`, never negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Decimal {
    negative: bool,
    digits: String,
    exponent: i64,
}

impl JsonNumber {
    /// Builds a number from a lexeme that already matches the JSON number
    /// grammar. Returns `None` otherwise.
    pub fn from_lexeme(lexeme: &str) -> Option<Self> {
        let canonical = Decimal::parse(lexeme)?;
        Some(JsonNumber {
            lexeme: lexeme.to_owned(),
            canonical,
        })
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_lexeme(&n.to_string()).expect("integer lexeme")
    }

    pub fn lexeme(&self) -> &str {
        &self.lexeme
    }

    /// True when the value has no fractional part (`2.0` and `1e3` count).
    pub fn is_integer(&self) -> bool {
        self.canonical.digits.is_empty() || self.canonical.exponent >= 0
    }

    pub fn as_f64(&self) -> f64 {
        self.lexeme.parse().unwrap_or(f64::NAN)
    }
}

impl PartialEq for JsonNumber {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for JsonNumber {}

impl Hash for JsonNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl fmt::Display for JsonNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lexeme)
    }
}

impl Decimal {
    fn parse(s: &str) -> Option<Decimal> {
        let bytes = s.as_bytes();
        let mut i = 0;
        let negative = bytes.first() == Some(&b'-');
        if negative {
            i += 1;
        }
        let int_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let int_part = &s[int_start..i];
        if int_part.is_empty() || (int_part.len() > 1 && int_part.starts_with('0')) {
            return None;
        }
        let mut frac_part = "";
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            let frac_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            frac_part = &s[frac_start..i];
            if frac_part.is_empty() {
                return None;
            }
        }
        let mut exponent: i64 = 0;
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            i += 1;
            let mut exp_negative = false;
            if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                exp_negative = bytes[i] == b'-';
                i += 1;
            }
            let exp_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                // saturate: exponents this large are beyond any practical input
                exponent = exponent
                    .saturating_mul(10)
                    .saturating_add(i64::from(bytes[i] - b'0'));
                i += 1;
            }
            if i == exp_start {
                return None;
            }
            if exp_negative {
                exponent = -exponent;
            }
        }
        if i != bytes.len() {
            return None;
        }

        let mut digits: String = int_part.chars().chain(frac_part.chars()).collect();
        exponent = exponent.saturating_sub(frac_part.len() as i64);
        let leading = digits.len() - digits.trim_start_matches('0').len();
        digits.drain(..leading);
        let trimmed = digits.trim_end_matches('0').len();
        exponent = exponent.saturating_add((digits.len() - trimmed) as i64);
        digits.truncate(trimmed);
        if digits.is_empty() {
            return Some(Decimal {
                negative: false,
                digits,
                exponent: 0,
            });
        }
        Some(Decimal {
            negative,
            digits,
            exponent,
        })
    }
}

/// An object node. Members keep their source order; labels are distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonObject {
    pub members: Vec<(String, JsonValue)>,
    /// Assigned after parsing from the compact layout of the owning document.
    pub id: ObjectId,
}

impl JsonObject {
    pub fn new(members: Vec<(String, JsonValue)>) -> Self {
        JsonObject {
            members,
            id: ObjectId {
                document: 0,
                line: 1,
            },
        }
    }

    pub fn get(&self, label: &str) -> Option<&JsonValue> {
        self.members
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Number(JsonNumber),
    String(String),
    Array(Vec<JsonValue>),
    Object(JsonObject),
}

/// The six JSON kinds, in the order used for sorting mixed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JsonKind {
    Null,
    Boolean,
    Number,
    String,
    Array,
    Object,
}

impl JsonKind {
    pub fn name(self) -> &'static str {
        match self {
            JsonKind::Null => "null",
            JsonKind::Boolean => "boolean",
            JsonKind::Number => "number",
            JsonKind::String => "string",
            JsonKind::Array => "array",
            JsonKind::Object => "object",
        }
    }
}

impl JsonValue {
    pub fn kind(&self) -> JsonKind {
        match self {
            JsonValue::Null => JsonKind::Null,
            JsonValue::Bool(_) => JsonKind::Boolean,
            JsonValue::Number(_) => JsonKind::Number,
            JsonValue::String(_) => JsonKind::String,
            JsonValue::Array(_) => JsonKind::Array,
            JsonValue::Object(_) => JsonKind::Object,
        }
    }

    /// Null, booleans, numbers and strings.
    pub fn is_basic(&self) -> bool {
        !matches!(self, JsonValue::Array(_) | JsonValue::Object(_))
    }

    pub fn as_object(&self) -> Option<&JsonObject> {
        match self {
            JsonValue::Object(o) => Some(o),
            _ => None,
        }
    }

    pub fn as_array(&self) -> Option<&[JsonValue]> {
        match self {
            JsonValue::Array(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            JsonValue::String(s) => Some(s),
            _ => None,
        }
    }

    pub fn string(s: impl Into<String>) -> Self {
        JsonValue::String(s.into())
    }

    pub fn object<I, K>(members: I) -> Self
    where
        I: IntoIterator<Item = (K, JsonValue)>,
        K: Into<String>,
    {
        JsonValue::Object(JsonObject::new(
            members.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        ))
    }

    /// Structural equality in the JSON Schema sense: numbers compare by value,
    /// objects compare as unordered maps, object ids are ignored.
    pub fn json_eq(&self, other: &JsonValue) -> bool {
        match (self, other) {
            (JsonValue::Object(a), JsonValue::Object(b)) => {
                a.len() == b.len()
                    && a.members
                        .iter()
                        .all(|(l, v)| b.get(l).is_some_and(|w| v.json_eq(w)))
            }
            (JsonValue::Array(a), JsonValue::Array(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.json_eq(y))
            }
            (a, b) => a == b,
        }
    }

    /// Compact single-line JSON text. Strings are escaped, numbers keep their
    /// lexeme, object members keep their order.
    pub fn to_json_text(&self) -> String {
        let mut out = String::new();
        super::print::write_inline(self, &mut out);
        out
    }
}

impl fmt::Display for JsonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_text())
    }
}

impl From<bool> for JsonValue {
    fn from(b: bool) -> Self {
        JsonValue::Bool(b)
    }
}

impl From<i64> for JsonValue {
    fn from(n: i64) -> Self {
        JsonValue::Number(JsonNumber::from_i64(n))
    }
}

impl From<&str> for JsonValue {
    fn from(s: &str) -> Self {
        JsonValue::String(s.to_owned())
    }
}

/// Orders basic values by kind, then by canonical text. Used wherever output
/// order must be a pure function of the data.
pub fn canonical_order(a: &JsonValue, b: &JsonValue) -> Ordering {
    a.kind()
        .cmp(&b.kind())
        .then_with(|| a.to_json_text().cmp(&b.to_json_text()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> JsonNumber {
        JsonNumber::from_lexeme(s).unwrap()
    }

    #[test]
    fn numbers_compare_by_value() {
        assert_eq!(num("1"), num("1.0"));
        assert_eq!(num("1"), num("10e-1"));
        assert_eq!(num("0"), num("-0.0"));
        assert_eq!(num("120"), num("1.2E2"));
        assert_ne!(num("1"), num("-1"));
        assert_ne!(num("0.1"), num("0.01"));
    }

    #[test]
    fn number_lexeme_is_preserved() {
        assert_eq!(num("1.50").to_string(), "1.50");
        assert_eq!(num("-0").lexeme(), "-0");
    }

    #[test]
    fn rejects_bad_lexemes() {
        for bad in ["", "-", "01", "1.", ".5", "1e", "+1", "1e+", "0x10", "1 "] {
            assert!(JsonNumber::from_lexeme(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn integer_detection() {
        assert!(num("2.0").is_integer());
        assert!(num("1e3").is_integer());
        assert!(num("0.0").is_integer());
        assert!(!num("2.5").is_integer());
        assert!(!num("25e-1").is_integer());
        assert!(num("25e-1") == num("2.5"));
    }

    #[test]
    fn json_eq_ignores_member_order() {
        let a = JsonValue::object([("x", JsonValue::from(1)), ("y", JsonValue::Null)]);
        let b = JsonValue::object([("y", JsonValue::Null), ("x", JsonValue::from(1))]);
        assert!(a.json_eq(&b));
        assert_ne!(a, b);
    }
}
