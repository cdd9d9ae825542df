// Zoom-dependent render styles: dots at city level, translucent lines at
// district level, opaque lines at street level. Exactly two thresholds.

import {
  GENDER_COLORS,
  OCCUPATION_COLORS,
  countryColor,
  periodColor,
} from './palette';
import { ThemeLayer } from './types';

export const ZOOM_DISTRICT = 12;   // Z1: city -> district
export const ZOOM_STREET = 14.5;   // Z2: district -> street

export type GeometryMode = 'point' | 'line';

export interface RenderStyle {
  mode: GeometryMode;
  color: string;
  opacity: number;
}

export interface StyleContext {
  /** City year range, used to quantize the period ramp. */
  yearRange: [number, number];
  z1?: number;
  z2?: number;
}

const DEFAULT_RANGE: [number, number] = [1030, 2018];

export function themeColor(
  theme: ThemeLayer,
  value: string,
  yearRange: [number, number] = DEFAULT_RANGE,
): string {
  switch (theme) {
    case 'occupation':
      return OCCUPATION_COLORS[value] ?? OCCUPATION_COLORS.other;
    case 'gender':
      return GENDER_COLORS[value] ?? GENDER_COLORS.unknown;
    case 'country':
      return countryColor(value);
    case 'period': {
      const year = Number(value);
      if (!Number.isFinite(year)) return '#adb5bd';
      return periodColor(year, yearRange);
    }
  }
}

export function styleFor(
  theme: ThemeLayer,
  value: string,
  zoom: number,
  context: StyleContext = { yearRange: DEFAULT_RANGE },
): RenderStyle {
  const z1 = context.z1 ?? ZOOM_DISTRICT;
  const z2 = context.z2 ?? ZOOM_STREET;
  const color = themeColor(theme, value, context.yearRange);
  if (zoom < z1) return { mode: 'point', color, opacity: 1.0 };
  if (zoom < z2) return { mode: 'line', color, opacity: 0.5 };
  return { mode: 'line', color, opacity: 1.0 };
}
