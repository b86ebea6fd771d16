//! Validation of JSON documents against the subset of JSON Schema used by
//! the schemas in `docs/`: `type`, `properties`, `required`,
//! `additionalProperties`, `items`, `enum`, `minimum`, `minItems`,
//! `maxItems` and local `$ref`s into `definitions`.

use serde_json::Value;

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        _ => false,
    }
}

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> Result<&'a Value, String> {
    match schema.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let path = r.strip_prefix("#/").ok_or_else(|| format!("unsupported $ref `{r}`"))?;
            let mut cur = root;
            for part in path.split('/') {
                cur = cur.get(part).ok_or_else(|| format!("dangling $ref `{r}`"))?;
            }
            Ok(cur)
        }
        None => Ok(schema),
    }
}

fn check(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let schema = match resolve(root, schema) {
        Ok(s) => s,
        Err(e) => {
            errors.push(format!("{path}: {e}"));
            return;
        }
    };
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, v),
            Value::Array(ts) => ts.iter().filter_map(Value::as_str).any(|s| type_matches(s, v)),
            _ => false,
        };
        if !ok {
            errors.push(format!("{path}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(Value::Array(options)) = schema.get("enum") {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} not in {}", Value::Array(options.clone())));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errors.push(format!("{path}: {x} below minimum {min}"));
        }
    }
    if let Value::Object(map) = v {
        let props = schema.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = schema.get("required") {
            for r in req.iter().filter_map(Value::as_str) {
                if !map.contains_key(r) {
                    errors.push(format!("{path}: missing required `{r}`"));
                }
            }
        }
        for (k, child) in map {
            let sub = format!("{path}/{k}");
            match props.and_then(|p| p.get(k)) {
                Some(s) => check(root, s, child, &sub, errors),
                None => match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => errors.push(format!("{path}: unexpected property `{k}`")),
                    Some(s @ Value::Object(_)) => check(root, s, child, &sub, errors),
                    _ => {}
                },
            }
        }
    }
    if let Value::Array(xs) = v {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (xs.len() as u64) < min {
                errors.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if xs.len() as u64 > max {
                errors.push(format!("{path}: more than {max} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, x) in xs.iter().enumerate() {
                check(root, items, x, &format!("{path}/{i}"), errors);
            }
        }
    }
}

/// All violations of `schema` by `doc`, as `path: message` lines.
pub fn validate(schema: &Value, doc: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, doc, "", &mut errors);
    errors
}
