//! Minimal structural validator for the shipped report schema.
//!
//! Supports the subset of JSON Schema the schema file uses: `type`
//! (including type arrays), `properties`, `required`, `items`, `enum`,
//! `minLength` and `maxLength`. Enough to keep reports and schema honest
//! without a validator dependency.

use serde_json::Value;

pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$")
}

fn type_matches(t: &str, value: &Value) -> bool {
    match t {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn validate_at(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(ty) = schema.get("type") {
        let ok = match ty {
            Value::String(t) => type_matches(t, value),
            Value::Array(ts) => ts
                .iter()
                .filter_map(|t| t.as_str())
                .any(|t| type_matches(t, value)),
            _ => return Err(format!("{path}: malformed schema type")),
        };
        if !ok {
            return Err(format!("{path}: expected type {ty}, got {value}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(|e| e.as_array()) {
        if !allowed.contains(value) {
            return Err(format!("{path}: value {value} not in enum"));
        }
    }
    if let Some(min) = schema.get("minLength").and_then(|m| m.as_u64()) {
        if let Some(s) = value.as_str() {
            if (s.len() as u64) < min {
                return Err(format!("{path}: string shorter than {min}"));
            }
        }
    }
    if let Some(max) = schema.get("maxLength").and_then(|m| m.as_u64()) {
        if let Some(s) = value.as_str() {
            if (s.len() as u64) > max {
                return Err(format!("{path}: string longer than {max}"));
            }
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
            for key in required.iter().filter_map(|k| k.as_str()) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key '{key}'"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate_at(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate_at(items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn accepts_and_rejects() {
        let schema = json!({
            "type": "object",
            "required": ["a"],
            "properties": {
                "a": {"type": "array", "items": {"type": "integer"}},
                "b": {"type": ["string", "null"]}
            }
        });
        assert!(validate(&schema, &json!({"a": [1, 2], "b": null})).is_ok());
        assert!(validate(&schema, &json!({"a": [1, "x"]})).is_err());
        assert!(validate(&schema, &json!({"b": "y"})).is_err());
    }
}
