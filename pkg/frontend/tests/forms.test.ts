import { describe, expect, it } from "vitest";

import { AlgorithmSchema } from "../src/api";
import { buildForm, formPayload, formValid, setField } from "../src/forms";
import { BIMAX_SCHEMA, CC_SCHEMA } from "./mockService";

describe("schema-driven forms", () => {
  it("prefills CC defaults from the registry schema", () => {
    const form = buildForm(CC_SCHEMA as AlgorithmSchema);
    expect(form.get("delta")!.raw).toBe("1");
    expect(form.get("alpha")!.raw).toBe("1.2");
    expect(form.get("n")!.raw).toBe("100");
    expect(formValid(form)).toBe(true);
  });

  it("payload only contains schema parameters that differ from defaults", () => {
    const form = buildForm(CC_SCHEMA as AlgorithmSchema);
    setField(form, "delta", "0.5");
    setField(form, "bogus", "1"); // not in the schema: dropped
    expect(formPayload(form)).toEqual({ delta: 0.5 });
  });

  it("flags type and bound violations", () => {
    const form = buildForm(CC_SCHEMA as AlgorithmSchema);
    setField(form, "n", "2.5");
    expect(form.get("n")!.error).toMatch(/integer/);
    expect(formValid(form)).toBe(false);
    setField(form, "n", "5");
    expect(formValid(form)).toBe(true);
    setField(form, "delta", "-1");
    expect(form.get("delta")!.error).toMatch(/>= 0/);
  });

  it("restricts choice parameters to the schema's choices", () => {
    const form = buildForm(BIMAX_SCHEMA as AlgorithmSchema);
    expect(form.get("mode")!.raw).toBe("recursive");
    setField(form, "mode", "iterative");
    expect(formValid(form)).toBe(true);
    setField(form, "mode", "mystery");
    expect(form.get("mode")!.error).toMatch(/one of/);
  });
});
