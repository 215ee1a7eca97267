// Small presentation helpers. Numbers shown in the console always originate
// from server payloads; these functions only shorten them for display.

export function fmt(x: number | null | undefined, digits = 6): string {
  if (x === null || x === undefined) return "—";
  if (!Number.isFinite(x)) return String(x);
  if (x === 0) return "0";
  const out = x.toPrecision(digits);
  // drop trailing zeros outside exponent notation
  if (out.indexOf("e") === -1 && out.indexOf(".") !== -1) {
    return out.replace(/\.?0+$/, "");
  }
  return out;
}

export function fmtInt(x: number | null | undefined): string {
  if (x === null || x === undefined) return "—";
  return String(Math.trunc(x));
}

export function escapeHtml(value: string): string {
  return value.replace(/[&<>"']/g, char => {
    switch (char) {
      case "&":
        return "&amp;";
      case "<":
        return "&lt;";
      case ">":
        return "&gt;";
      case '"':
        return "&quot;";
      case "'":
        return "&#39;";
      default:
        return char;
    }
  });
}

export function escapeAttr(value: string): string {
  return escapeHtml(value);
}

// Strict numeric parse for form fields: empty or non-numeric text gives null.
export function parseNumber(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

export function parseInteger(raw: string): number | null {
  const value = parseNumber(raw);
  if (value === null || !Number.isInteger(value)) return null;
  return value;
}
