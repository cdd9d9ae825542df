// Versioned color palettes for the four theme layers.
//
// Constraints carried by the design (and pinned in tests):
//  - similar occupations share a hue family: creative groups in oranges,
//    social- and science-domain professionals in greens;
//  - gender avoids the stereotypical pink/blue pair and uses purple/green;
//  - nation-of-origin colors are drawn from the country's flag where we
//    ship one, with a deterministic fallback for the long tail;
//  - the period ramp runs yellow (oldest) through orange/red/purple to
//    blue (newest), quantized per city over its year range.

export const PALETTE_VERSION = 1;

export const OCCUPATION_COLORS: Record<string, string> = {
  legislators: '#9775fa',
  writers: '#e8590c',
  creative_performing_artists: '#f59f00',
  science_engineering_professionals: '#2f9e44',
  health_associate_professionals: '#12b886',
  sportsmen: '#e64980',
  social_workers: '#74b816',
  teaching_professionals: '#15aabf',
  businessmen: '#a61e4d',
  craft_trades_workers: '#8d6e63',
  legal_social_professionals: '#4263eb',
  religion_representatives: '#9c36b5',
  military_personnel: '#868e96',
  royals: '#c92a2a',
  politicians: '#1864ab',
  responders_victims_911: '#343a40',
  other: '#adb5bd',
};

export const GENDER_COLORS: Record<string, string> = {
  female: '#ae3ec9', // purple, not pink
  male: '#37b24d',   // green, not blue
  unknown: '#868e96',
};

// Flag-derived hues for the countries the corpus actually produces.
export const FLAG_COLORS: Record<string, string> = {
  FR: '#0055a4', // French tricolore blue
  AT: '#ed2939', // Austrian red
  DE: '#ffce00', // German gold
  GB: '#012169', // Union Jack blue
  IE: '#169b62', // Irish green
  IT: '#008c45', // Italian green
  ES: '#aa151b', // Spanish red
  PT: '#046a38',
  NL: '#ff9b00', // Dutch orange
  BE: '#fdda24',
  CH: '#d52b1e',
  PL: '#d22630', // Polish red
  CZ: '#11457e',
  SK: '#0b4ea2',
  HU: '#477050',
  RU: '#0032a0',
  UA: '#ffd700',
  RS: '#c6363c',
  HR: '#ff0000',
  GR: '#001489',
  TR: '#e30a17',
  SE: '#ffcd00',
  NO: '#ba0c2f',
  DK: '#c8102e',
  FI: '#002f6c',
  US: '#b22234', // Old Glory red
  CA: '#d80621',
  MX: '#006341',
  BR: '#009739',
  AR: '#6cace4',
  VE: '#fcd116', // Venezuelan yellow
  CU: '#cf142b',
  CN: '#ee1c25',
  JP: '#bc002d',
  IN: '#ff9933',
  IL: '#0038b8',
  EG: '#ce1126',
  ZA: '#007749',
  AU: '#00008b',
  NZ: '#00247d',
  MK: '#d20000',
  unknown: '#adb5bd',
};

// Yellow -> orange -> red -> purple -> blue; oldest to newest.
export const PERIOD_RAMP: string[] = [
  '#ffe066',
  '#ffc078',
  '#ff8787',
  '#f06595',
  '#cc5de8',
  '#845ef7',
  '#5c7cfa',
  '#4263eb',
  '#1864ab',
];

export function hexToHsl(hex: string): { h: number; s: number; l: number } {
  const m = /^#?([0-9a-f]{6})$/i.exec(hex.trim());
  if (!m) throw new Error(`not a hex color: ${hex}`);
  const n = parseInt(m[1], 16);
  const r = ((n >> 16) & 0xff) / 255;
  const g = ((n >> 8) & 0xff) / 255;
  const b = (n & 0xff) / 255;
  const max = Math.max(r, g, b);
  const min = Math.min(r, g, b);
  const l = (max + min) / 2;
  if (max === min) return { h: 0, s: 0, l };
  const d = max - min;
  const s = l > 0.5 ? d / (2 - max - min) : d / (max + min);
  let h: number;
  if (max === r) h = ((g - b) / d + (g < b ? 6 : 0)) * 60;
  else if (max === g) h = ((b - r) / d + 2) * 60;
  else h = ((r - g) / d + 4) * 60;
  return { h, s, l };
}

function hslToHex(h: number, s: number, l: number): string {
  const f = (k: number) => {
    const a = s * Math.min(l, 1 - l);
    const n = (k + h / 30) % 12;
    const c = l - a * Math.max(-1, Math.min(n - 3, Math.min(9 - n, 1)));
    return Math.round(c * 255)
      .toString(16)
      .padStart(2, '0');
  };
  return `#${f(0)}${f(8)}${f(4)}`;
}

// Deterministic fallback for country codes without a shipped flag color:
// golden-angle hue spacing keeps neighboring codes far apart on the wheel.
export function fallbackCountryColor(code: string): string {
  let h = 0;
  for (const ch of code) h = (h * 31 + ch.charCodeAt(0)) >>> 0;
  const hue = (h * 137.508) % 360;
  const light = 0.38 + ((h >> 8) % 20) / 100;
  return hslToHex(hue, 0.65, light);
}

export function countryColor(code: string): string {
  return FLAG_COLORS[code] ?? fallbackCountryColor(code);
}

/** Ramp bucket for a year inside [min, max]; monotone in the year. */
export function periodRampIndex(year: number, range: [number, number]): number {
  const [min, max] = range;
  if (max <= min) return 0;
  const t = (year - min) / (max - min);
  const clamped = Math.max(0, Math.min(1, t));
  return Math.min(PERIOD_RAMP.length - 1, Math.floor(clamped * PERIOD_RAMP.length));
}

export function periodColor(year: number, range: [number, number]): string {
  return PERIOD_RAMP[periodRampIndex(year, range)];
}
