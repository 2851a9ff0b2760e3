mod common;

use cfdschema::json::{parse_value, JsonValue};
use cfdschema::schema::{Keyword, SchemaNode};
use cfdschema::validate::is_valid;
use proptest::prelude::*;

fn load(text: &str) -> SchemaNode {
    SchemaNode::from_json(&parse_value(text).unwrap()).unwrap()
}

fn reference_accepts(schema: &str, instance: &JsonValue) -> bool {
    let schema: serde_json::Value = serde_json::from_str(schema).unwrap();
    let instance: serde_json::Value = serde_json::from_str(&instance.to_json_text()).unwrap();
    jsonschema::draft7::new(&schema)
        .unwrap()
        .is_valid(&instance)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conditional_law(a in common::schema_text(), b in common::schema_text(), c in common::schema_text(),
                       i in common::json_value()) {
        let (sa, sb, sc) = (load(&a), load(&b), load(&c));
        let full = load(&format!(r#"{{"if":{a},"then":{b},"else":{c}}}"#));
        let expected = if is_valid(&i, &sa) { is_valid(&i, &sb) } else { is_valid(&i, &sc) };
        prop_assert_eq!(is_valid(&i, &full), expected);
        let no_else = load(&format!(r#"{{"if":{a},"then":{b}}}"#));
        prop_assert_eq!(is_valid(&i, &no_else), !is_valid(&i, &sa) || is_valid(&i, &sb));
    }

    #[test]
    fn combinator_laws(a in common::schema_text(), b in common::schema_text(), i in common::json_value()) {
        let (sa, sb) = (load(&a), load(&b));
        let all = load(&format!(r#"{{"allOf":[{a},{b}]}}"#));
        let any = load(&format!(r#"{{"anyOf":[{a},{b}]}}"#));
        prop_assert_eq!(is_valid(&i, &all), is_valid(&i, &sa) && is_valid(&i, &sb));
        prop_assert_eq!(is_valid(&i, &any), is_valid(&i, &sa) || is_valid(&i, &sb));
        prop_assert!(is_valid(&i, &SchemaNode::empty().with(Keyword::AllOf(vec![]))));
        prop_assert!(!is_valid(&i, &SchemaNode::empty().with(Keyword::AnyOf(vec![]))));
        prop_assert!(is_valid(&i, &SchemaNode::empty()));
    }

    #[test]
    fn agrees_with_reference_validator(s in common::schema_text(), i in common::json_value()) {
        prop_assert_eq!(is_valid(&i, &load(&s)), reference_accepts(&s, &i), "schema {} instance {}", s, i);
    }
}
