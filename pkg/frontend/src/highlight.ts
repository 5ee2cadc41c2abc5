// Lightweight SPARC syntax highlighting for the editor overlay.

const KEYWORDS = new Set(["sorts", "predicates", "rules", "not", "extend", "with"]);

export interface Token {
  kind: "comment" | "keyword" | "directive" | "sort" | "variable"
      | "number" | "ident" | "symbol" | "space";
  text: string;
}

const PATTERNS: [Token["kind"], RegExp][] = [
  ["comment", /^%[^\n]*/],
  ["directive", /^#(include|const)\b/],
  ["sort", /^#[a-z]\w*/],
  ["number", /^\d+/],
  ["variable", /^[A-Z]\w*/],
  ["ident", /^[a-z]\w*/],
  ["space", /^\s+/],
  ["symbol", /^(:-|!=|<=|>=|\.\.|[-.,{}()=+*/|<>?¬"])/],
];

export function tokenize(text: string): Token[] {
  const out: Token[] = [];
  let rest = text;
  while (rest.length > 0) {
    let matched = false;
    for (const [kind, re] of PATTERNS) {
      const m = re.exec(rest);
      if (m) {
        const tokenText = m[0];
        if (kind === "ident" && KEYWORDS.has(tokenText)) {
          out.push({ kind: "keyword", text: tokenText });
        } else {
          out.push({ kind, text: tokenText });
        }
        rest = rest.slice(tokenText.length);
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.push({ kind: "symbol", text: rest[0] });
      rest = rest.slice(1);
    }
  }
  return out;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** HTML for the highlight layer sitting behind the textarea. */
export function highlightHtml(text: string): string {
  return tokenize(text)
    .map((t) =>
      t.kind === "space"
        ? escapeHtml(t.text)
        : `<span class="tok-${t.kind}">${escapeHtml(t.text)}</span>`)
    .join("");
}
