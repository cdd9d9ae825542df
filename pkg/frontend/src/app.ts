// The map controller: owns the view state, talks to the API, feeds the
// engine. Interaction handlers S1-S4 (selectors), M1-M2 (map controls),
// R (random street) and E1-E2 (engagement) all live here so the DOM layer
// stays a thin shell.

import { ApiClient } from './api';
import { MapEngine, StyledFeature } from './mapengine';
import { StyleContext, styleFor } from './style';
import { CityId, CityInfo, StreetFeature, ThemeLayer } from './types';
import { ViewState, defaultViewState, normalizeTags } from './viewstate';
import { downloadName, permalink, shareIntentUrl } from './share';

export interface PopupModel {
  name: string;
  birthYear: number | null;
  profession: string;
  imageUrl: string | null;
  encyclopediaUrl: string | null;
  streetName: string;
}

export interface AppEvents {
  onToast?: (message: string) => void;
  onPopup?: (popup: PopupModel | null) => void;
  onStateChange?: (state: ViewState) => void;
}

function themeValue(feature: StreetFeature, theme: ThemeLayer): string {
  const props = feature.properties;
  switch (theme) {
    case 'occupation':
      return props.occupation_group;
    case 'gender':
      return props.gender;
    case 'country':
      return props.country;
    case 'period':
      return props.denomination === null ? 'unknown' : String(props.denomination);
  }
}

export function popupFromFeature(feature: StreetFeature): PopupModel {
  const props = feature.properties;
  return {
    name: props.honoree,
    birthYear: props.dob,
    profession: props.occupation || props.occupation_group,
    imageUrl: props.image_url,
    encyclopediaUrl: props.honoree_url,
    streetName: props.streetname,
  };
}

export class AppController {
  state: ViewState;
  renderedFeatures: StreetFeature[] = [];
  lastTotalCount = 0;
  cities: CityInfo[] = [];

  constructor(
    private client: ApiClient,
    private engine: MapEngine,
    private events: AppEvents = {},
    initial?: ViewState,
  ) {
    this.state = initial ?? defaultViewState();
  }

  private cityInfo(city: CityId): CityInfo | undefined {
    return this.cities.find((c) => c.id === city);
  }

  private styleContext(): StyleContext {
    const info = this.cityInfo(this.state.city);
    return { yearRange: info ? info.year_range : [1030, 2018] };
  }

  async start(): Promise<void> {
    this.cities = await this.client.cities();
    const info = this.cityInfo(this.state.city);
    if (info && this.state.camera.center[0] === defaultViewState().camera.center[0]) {
      this.state.camera = { center: info.center, zoom: 11, bearing: 0 };
    }
    await this.refresh();
  }

  /** Re-fetch the current filter and swap the rendered layer. */
  async refresh(): Promise<void> {
    try {
      const response = await this.client.streets(this.state.city, {
        theme: this.state.theme,
        yearRange: this.state.yearRange,
        tags: this.state.tags,
      });
      this.renderedFeatures = response.collection.features;
      this.lastTotalCount = response.totalCount;
      const context = this.styleContext();
      const styled: StyledFeature[] = this.renderedFeatures.map((feature) => ({
        feature,
        style: styleFor(
          this.state.theme,
          themeValue(feature, this.state.theme),
          this.state.camera.zoom,
          context,
        ),
      }));
      this.engine.setCamera(this.state.camera);
      this.engine.setData(styled);
      this.engine.render();
      this.events.onStateChange?.(this.state);
    } catch (error) {
      if ((error as Error).name === 'AbortError') return; // superseded
      // keep the last good layer; surface a non-blocking toast
      this.events.onToast?.(`could not load streets: ${(error as Error).message}`);
    }
  }

  // S1: switch city, fly the camera to its center.
  async selectCity(city: CityId): Promise<void> {
    this.state.city = city;
    const info = this.cityInfo(city);
    if (info) {
      this.state.camera = { center: info.center, zoom: 11, bearing: 0 };
      this.state.yearRange = null;
    }
    await this.refresh();
  }

  // S2: switch theme; tags belong to the previous theme's domain, so reset.
  async selectTheme(theme: ThemeLayer): Promise<void> {
    this.state.theme = theme;
    this.state.tags = [];
    await this.refresh();
  }

  // S3: time slider.
  async setYearRange(range: [number, number] | null): Promise<void> {
    this.state.yearRange = range;
    await this.refresh();
  }

  // S4: tag toggles.
  async toggleTag(tag: string): Promise<void> {
    const set = new Set(this.state.tags);
    if (set.has(tag)) set.delete(tag);
    else set.add(tag);
    this.state.tags = normalizeTags([...set]);
    await this.refresh();
  }

  // M1: street click -> badge pop-up.
  clickAt(x: number, y: number): PopupModel | null {
    const feature = this.engine.pick(x, y);
    const popup = feature ? popupFromFeature(feature) : null;
    this.events.onPopup?.(popup);
    return popup;
  }

  // M2: zoom / rotate / reset; address search resolves through a geocoder.
  async setCamera(center: [number, number], zoom: number, bearing = 0): Promise<void> {
    const crossed =
      styleFor(this.state.theme, 'other', this.state.camera.zoom, this.styleContext()).mode !==
        styleFor(this.state.theme, 'other', zoom, this.styleContext()).mode ||
      styleFor(this.state.theme, 'other', this.state.camera.zoom, this.styleContext()).opacity !==
        styleFor(this.state.theme, 'other', zoom, this.styleContext()).opacity;
    this.state.camera = { center, zoom, bearing };
    if (crossed) {
      await this.refresh(); // restyle across a zoom threshold
    } else {
      this.engine.setCamera(this.state.camera);
      this.engine.render();
    }
  }

  async resetView(): Promise<void> {
    const info = this.cityInfo(this.state.city);
    await this.setCamera(info ? info.center : this.state.camera.center, 11, 0);
  }

  // R: random street -> fly there and open its pop-up.
  async randomStreet(seed?: number): Promise<PopupModel | null> {
    try {
      const feature = await this.client.randomStreet(
        this.state.city,
        { theme: this.state.theme, yearRange: this.state.yearRange, tags: this.state.tags },
        seed,
      );
      if (!feature) {
        this.events.onToast?.('no matching street');
        return null;
      }
      const anchor = feature.properties.representative_point;
      if (anchor) {
        await this.setCamera(anchor, Math.max(this.state.camera.zoom, 15));
      }
      const popup = popupFromFeature(feature);
      this.events.onPopup?.(popup);
      return popup;
    } catch (error) {
      this.events.onToast?.(`random street failed: ${(error as Error).message}`);
      return null;
    }
  }

  // E1: export the current canvas as a picture.
  exportPNG(): { dataUrl: string; filename: string } {
    return { dataUrl: this.engine.toPNG(), filename: downloadName(this.state) };
  }

  // E2: share intent pre-filled with the permalink.
  shareUrl(baseUrl: string): string {
    return shareIntentUrl(this.state, baseUrl);
  }

  permalink(baseUrl: string): string {
    return permalink(this.state, baseUrl);
  }
}
