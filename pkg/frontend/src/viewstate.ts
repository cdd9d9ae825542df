// App state <-> URL fragment. The permalink format is versioned:
//   #v=1&city=paris&theme=period&from=1853&to=1870&tags=a,b
//    &lon=2.3522&lat=48.8566&zoom=11.5&bearing=0&section=4
// Numbers serialize at full precision; tags are stored sorted and unique,
// so encode(decode(x)) and decode(encode(s)) are identities.

import { Camera, CityId, ThemeLayer } from './types';

export const PERMALINK_VERSION = 1;

export interface ViewState {
  city: CityId;
  theme: ThemeLayer;
  yearRange: [number, number] | null;
  tags: string[]; // sorted, unique; empty array = no tag filter
  camera: Camera;
  section: 1 | 2 | 3 | 4 | 5;
}

export function defaultViewState(): ViewState {
  return {
    city: 'paris',
    theme: 'occupation',
    yearRange: null,
    tags: [],
    camera: { center: [2.3522, 48.8566], zoom: 11, bearing: 0 },
    section: 1,
  };
}

export function normalizeTags(tags: string[]): string[] {
  return [...new Set(tags.filter((t) => t.length > 0))].sort();
}

export function encodeViewState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set('v', String(PERMALINK_VERSION));
  params.set('city', state.city);
  params.set('theme', state.theme);
  if (state.yearRange) {
    params.set('from', String(state.yearRange[0]));
    params.set('to', String(state.yearRange[1]));
  }
  if (state.tags.length) {
    params.set('tags', normalizeTags(state.tags).join(','));
  }
  params.set('lon', String(state.camera.center[0]));
  params.set('lat', String(state.camera.center[1]));
  params.set('zoom', String(state.camera.zoom));
  params.set('bearing', String(state.camera.bearing));
  params.set('section', String(state.section));
  return '#' + params.toString();
}

const CITY_SET = new Set(['paris', 'vienna', 'london', 'newyork']);
const THEME_SET = new Set(['occupation', 'gender', 'country', 'period']);

export function decodeViewState(fragment: string): ViewState | null {
  const raw = fragment.startsWith('#') ? fragment.slice(1) : fragment;
  if (!raw) return null;
  const params = new URLSearchParams(raw);
  if (params.get('v') !== String(PERMALINK_VERSION)) return null;
  const city = params.get('city');
  const theme = params.get('theme');
  if (!city || !CITY_SET.has(city) || !theme || !THEME_SET.has(theme)) return null;

  let yearRange: [number, number] | null = null;
  const from = params.get('from');
  const to = params.get('to');
  if (from !== null && to !== null) {
    const lo = Number(from);
    const hi = Number(to);
    if (!Number.isInteger(lo) || !Number.isInteger(hi) || lo > hi) return null;
    yearRange = [lo, hi];
  }

  const tags = normalizeTags((params.get('tags') ?? '').split(','));

  const lon = Number(params.get('lon'));
  const lat = Number(params.get('lat'));
  const zoom = Number(params.get('zoom'));
  const bearing = Number(params.get('bearing'));
  if (![lon, lat, zoom, bearing].every(Number.isFinite)) return null;

  const section = Number(params.get('section'));
  if (!Number.isInteger(section) || section < 1 || section > 5) return null;

  return {
    city: city as CityId,
    theme: theme as ThemeLayer,
    yearRange,
    tags,
    camera: { center: [lon, lat], zoom, bearing },
    section: section as ViewState['section'],
  };
}
