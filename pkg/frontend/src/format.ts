// Brazilian currency formatting and pt-BR number words for speech output.

export function formatValue(cents: number): string {
  if (cents < 0 || !Number.isInteger(cents)) {
    throw new Error(`cents must be a non-negative integer, got ${cents}`);
  }
  const reais = Math.floor(cents / 100);
  const dec = cents % 100;
  const grouped = reais.toString().replace(/\B(?=(\d{3})+(?!\d))/g, ".");
  return `R$ ${grouped},${dec.toString().padStart(2, "0")}`;
}

const UNITS = ["", "um", "dois", "três", "quatro", "cinco", "seis", "sete",
  "oito", "nove"];
const TEENS = ["dez", "onze", "doze", "treze", "catorze", "quinze",
  "dezesseis", "dezessete", "dezoito", "dezenove"];
const TENS = ["", "", "vinte", "trinta", "quarenta", "cinquenta", "sessenta",
  "setenta", "oitenta", "noventa"];
const HUNDREDS = ["", "cento", "duzentos", "trezentos", "quatrocentos",
  "quinhentos", "seiscentos", "setecentos", "oitocentos", "novecentos"];

function under1000(n: number): string {
  if (n === 100) return "cem";
  const parts: string[] = [];
  const h = Math.floor(n / 100);
  const rest = n % 100;
  if (h > 0) parts.push(HUNDREDS[h]);
  if (rest >= 10 && rest < 20) {
    parts.push(TEENS[rest - 10]);
  } else {
    const t = Math.floor(rest / 10);
    const u = rest % 10;
    if (t >= 2) parts.push(TENS[t]);
    if (u > 0) parts.push(UNITS[u]);
  }
  return parts.join(" e ");
}

// "e" joins the final group when it is small or round (mil e cem, mil e vinte)
function joinGroups(head: string, rest: number, restWords: string): string {
  if (rest === 0) return head;
  const connector = rest < 100 || rest % 100 === 0 ? " e " : " ";
  return head + connector + restWords;
}

export function numberToWordsPt(n: number): string {
  if (!Number.isInteger(n) || n < 0 || n > 9_999_999) {
    throw new Error(`number out of supported range: ${n}`);
  }
  if (n === 0) return "zero";
  const millions = Math.floor(n / 1_000_000);
  const afterMillions = n % 1_000_000;
  const thousands = Math.floor(afterMillions / 1000);
  const rest = afterMillions % 1000;

  let words = "";
  if (millions > 0) {
    words = millions === 1 ? "um milhão" : `${under1000(millions)} milhões`;
    if (afterMillions > 0) {
      words = joinGroups(words, afterMillions,
        numberToWordsPt(afterMillions));
    }
    return words;
  }
  if (thousands > 0) {
    words = thousands === 1 ? "mil" : `${under1000(thousands)} mil`;
    return joinGroups(words, rest, under1000(rest));
  }
  return under1000(rest);
}

export function spokenValue(cents: number): string {
  const reais = Math.floor(cents / 100);
  const dec = cents % 100;
  const parts: string[] = [];
  if (reais > 0 || dec === 0) {
    parts.push(`${numberToWordsPt(reais)} ${reais === 1 ? "real" : "reais"}`);
  }
  if (dec > 0) {
    parts.push(`${numberToWordsPt(dec)} ${dec === 1 ? "centavo" : "centavos"}`);
  }
  return parts.join(" e ");
}

const SPOKEN_OPERATIONS: Record<string, string> = {
  CREDITO: "crédito",
  DEBITO: "débito",
  VOUCHER: "voucher",
};

export function spokenOperation(label: string): string | null {
  return SPOKEN_OPERATIONS[label] ?? null;
}
