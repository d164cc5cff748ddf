// Schema-driven parameter forms. The server's algorithm registry is the only
// source of field names, types, defaults, and bounds; the UI never invents a
// parameter.

import { AlgorithmSchema, ParamSchema } from "./api";

export interface FieldState {
  schema: ParamSchema;
  raw: string; // what the user typed (or the stringified default)
  error: string | null;
}

export type FormState = Map<string, FieldState>;

export function buildForm(algo: AlgorithmSchema): FormState {
  const form: FormState = new Map();
  for (const p of algo.params) {
    const raw = p.default === null ? "" : String(p.default);
    form.set(p.name, { schema: p, raw, error: null });
  }
  return form;
}

function parseField(p: ParamSchema, raw: string): unknown {
  const text = raw.trim();
  if (text === "") {
    if (p.default === null) return undefined; // computed server-side
    throw new Error("value required");
  }
  if (p.type === "int") {
    if (!/^-?\d+$/.test(text)) throw new Error("expected an integer");
    return parseInt(text, 10);
  }
  if (p.type === "float") {
    const v = Number(text);
    if (!Number.isFinite(v)) throw new Error("expected a number");
    return v;
  }
  if (p.type === "bool") {
    if (text !== "true" && text !== "false") throw new Error("expected true or false");
    return text === "true";
  }
  return text;
}

export function setField(form: FormState, name: string, raw: string): void {
  const field = form.get(name);
  if (!field) return; // not in the schema: ignored by design
  field.raw = raw;
  field.error = null;
  try {
    const v = parseField(field.schema, raw);
    if (v === undefined) return;
    const p = field.schema;
    if (typeof v === "number") {
      if (p.min !== null && v < p.min) field.error = `must be >= ${p.min}`;
      if (p.max !== null && v > p.max) field.error = `must be <= ${p.max}`;
    }
    if (p.choices && !p.choices.includes(String(v))) {
      field.error = `must be one of ${p.choices.join(", ")}`;
    }
  } catch (err) {
    field.error = (err as Error).message;
  }
}

export function formValid(form: FormState): boolean {
  for (const f of form.values()) if (f.error) return false;
  return true;
}

// Payload containing only schema-known parameters whose value differs from
// the default (the server fills defaults itself).
export function formPayload(form: FormState): Record<string, unknown> {
  const out: Record<string, unknown> = {};
  for (const [name, f] of form) {
    if (f.error) throw new Error(`invalid field ${name}: ${f.error}`);
    const v = parseField(f.schema, f.raw);
    if (v === undefined) continue;
    if (f.schema.default !== null && v === f.schema.default) continue;
    out[name] = v;
  }
  return out;
}

export function renderForm(
  form: FormState,
  onChange: (name: string, raw: string) => void,
): HTMLElement {
  const root = document.createElement("div");
  root.className = "param-form";
  for (const [name, f] of form) {
    const row = document.createElement("label");
    row.className = "param-row";
    row.dataset.param = name;

    const caption = document.createElement("span");
    caption.textContent = name;
    caption.title = f.schema.description;
    row.appendChild(caption);

    let input: HTMLInputElement | HTMLSelectElement;
    if (f.schema.choices) {
      input = document.createElement("select");
      for (const c of f.schema.choices) {
        const opt = document.createElement("option");
        opt.value = c;
        opt.textContent = c;
        opt.selected = c === f.raw;
        input.appendChild(opt);
      }
    } else {
      input = document.createElement("input");
      input.type = "text";
      input.value = f.raw;
      if (f.schema.default === null) input.placeholder = "auto";
    }
    input.name = name;
    input.addEventListener("input", () => onChange(name, input.value));
    row.appendChild(input);

    const err = document.createElement("span");
    err.className = "field-error";
    err.textContent = f.error ?? "";
    row.appendChild(err);

    root.appendChild(row);
  }
  return root;
}
