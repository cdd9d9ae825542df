// Shared domain types mirroring the HTTP API's wire formats.

export type CityId = 'paris' | 'vienna' | 'london' | 'newyork';
export type ThemeLayer = 'occupation' | 'gender' | 'country' | 'period';

export const CITIES: CityId[] = ['paris', 'vienna', 'london', 'newyork'];
export const THEMES: ThemeLayer[] = ['occupation', 'gender', 'country', 'period'];

export interface StreetProperties {
  record_id: string;
  streetname: string;
  district: string | null;
  denomination: number | null;
  honoree: string;
  gender: string;
  occupation: string;
  occupation_group: string;
  country: string;
  dob: number | null;
  dod: number | null;
  honoree_url: string | null;
  image_url: string | null;
  source: string;
  city: string;
  representative_point: [number, number] | null;
  match_method: string;
}

export interface LineGeometry {
  type: 'LineString' | 'MultiLineString';
  coordinates: number[][] | number[][][];
}

export interface StreetFeature {
  type: 'Feature';
  geometry: LineGeometry;
  properties: StreetProperties;
}

export interface StreetCollection {
  type: 'FeatureCollection';
  features: StreetFeature[];
}

export interface CityInfo {
  id: CityId;
  display_name: string;
  center: [number, number];
  bounding_box: [number, number, number, number];
  year_range: [number, number];
  count: number;
}

export interface Camera {
  center: [number, number];
  zoom: number;
  bearing: number;
}

export interface ApiError {
  code: string;
  field: string;
  message: string;
}
