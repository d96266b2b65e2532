/** Exact rationals and golden-ring values, as serialized by the service.
 *
 * Certificates carry rationals as "p/q" strings; pagoda weights in the
 * golden ring appear as "a+br" / "a-br" with rational a, b and
 * r = (sqrt(5)-1)/2.  Tooltips must show these exactly — no floats.
 */

export class Rational {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint = 1n) {
    if (den === 0n) throw new Error('zero denominator');
    if (den < 0n) { num = -num; den = -den; }
    const g = gcd(num < 0n ? -num : num, den);
    this.num = g === 0n ? 0n : num / g;
    this.den = g === 0n ? 1n : den / g;
  }

  static parse(text: string): Rational {
    const m = /^(-?\d+)(?:\/(\d+))?$/.exec(text.trim());
    if (!m) throw new Error(`not a rational: ${JSON.stringify(text)}`);
    return new Rational(BigInt(m[1]!), m[2] ? BigInt(m[2]) : 1n);
  }

  add(other: Rational): Rational {
    return new Rational(this.num * other.den + other.num * this.den,
                        this.den * other.den);
  }

  neg(): Rational { return new Rational(-this.num, this.den); }

  cmp(other: Rational): number {
    const d = this.num * other.den - other.num * this.den;
    return d < 0n ? -1 : d > 0n ? 1 : 0;
  }

  isZero(): boolean { return this.num === 0n; }

  /** Approximate float value, for colour binning only. */
  toNumber(): number { return Number(this.num) / Number(this.den); }

  toString(): string {
    return this.den === 1n ? `${this.num}` : `${this.num}/${this.den}`;
  }
}

function gcd(a: bigint, b: bigint): bigint {
  while (b) { [a, b] = [b, a % b]; }
  return a;
}

/** Value a + b*r in the golden ring, r = (sqrt(5)-1)/2 (so r^2 = 1 - r). */
export class GoldenValue {
  constructor(readonly a: Rational, readonly b: Rational) {}

  static parse(text: string): GoldenValue {
    const t = text.trim().replace(/\s+/g, '');
    // Forms: "a", "br", "a+br", "a-br"; a and b rationals, b may be "1".
    const m = /^(-?[\d/]+)?(?:(\+|-)?(-?[\d/]*)r)?$/.exec(t);
    if (!m || (!m[1] && m[3] === undefined)) {
      throw new Error(`not a golden value: ${JSON.stringify(text)}`);
    }
    const a = m[1] ? Rational.parse(m[1]) : new Rational(0n);
    let b = new Rational(0n);
    if (m[3] !== undefined) {
      b = m[3] === '' ? new Rational(1n) : Rational.parse(m[3]);
      if (m[2] === '-') b = b.neg();
    }
    return new GoldenValue(a, b);
  }

  /** Approximate float value, for colour binning only. */
  toNumber(): number {
    return this.a.toNumber() + this.b.toNumber() * (Math.sqrt(5) - 1) / 2;
  }

  /** Exact symbolic form for tooltips, e.g. "3/2 - 1/2·ρ". */
  toSymbolic(): string {
    if (this.b.isZero()) return this.a.toString();
    const sign = this.b.cmp(new Rational(0n)) < 0 ? '-' : '+';
    const mag = sign === '-' ? this.b.neg() : this.b;
    const coeff = mag.toString() === '1' ? 'ρ' : `${mag}·ρ`;
    if (this.a.isZero()) return sign === '-' ? `-${coeff}` : coeff;
    return `${this.a} ${sign} ${coeff}`;
  }
}

/** Parse any exact value a certificate may carry. */
export function parseExact(text: string): Rational | GoldenValue {
  if (text.includes('r')) return GoldenValue.parse(text);
  return Rational.parse(text);
}
