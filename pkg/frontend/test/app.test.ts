// Controller tests against recorded backend responses: the fixtures under
// test/fixtures are actual response bodies of the street API over the
// bundled four-city corpus.

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { AppController } from '../src/app';
import { RecordingEngine } from '../src/mapengine';
import { StreetCollection } from '../src/types';
import { decodeViewState, defaultViewState } from '../src/viewstate';

const here = dirname(fileURLToPath(import.meta.url));
const SCENARIO = readFileSync(join(here, 'fixtures/paris_period_1853_1870.json'), 'utf-8');
const CITIES = readFileSync(join(here, 'fixtures/cities.json'), 'utf-8');

function fixtureFetch(log: string[] = []): (url: string, init?: { signal?: AbortSignal }) => Promise<Response> {
  return async (url: string) => {
    log.push(url);
    const parsed = new URL(url, 'http://localhost');
    if (parsed.pathname === '/cities') {
      return new Response(CITIES, { status: 200, headers: { 'content-type': 'application/json' } });
    }
    const streets = parsed.pathname.match(/^\/cities\/(\w+)\/streets$/);
    if (streets) {
      if (
        streets[1] === 'paris' &&
        parsed.searchParams.get('theme') === 'period' &&
        parsed.searchParams.get('from') === '1853' &&
        parsed.searchParams.get('to') === '1870'
      ) {
        return new Response(SCENARIO, {
          status: 200,
          headers: {
            'content-type': 'application/geo+json',
            'x-total-count': String((JSON.parse(SCENARIO) as StreetCollection).features.length),
          },
        });
      }
      const empty = JSON.stringify({ type: 'FeatureCollection', features: [] });
      return new Response(empty, {
        status: 200,
        headers: { 'content-type': 'application/geo+json', 'x-total-count': '0' },
      });
    }
    const random = parsed.pathname.match(/^\/cities\/(\w+)\/streets\/random$/);
    if (random) {
      const collection = JSON.parse(SCENARIO) as StreetCollection;
      return new Response(JSON.stringify(collection.features[0]), {
        status: 200,
        headers: { 'content-type': 'application/geo+json' },
      });
    }
    return new Response(JSON.stringify({ code: 'unknown_city', field: 'city', message: 'nope' }), {
      status: 404,
      headers: { 'content-type': 'application/json' },
    });
  };
}

function makeApp(events = {}) {
  const engine = new RecordingEngine();
  const client = new ApiClient('', fixtureFetch());
  const controller = new AppController(client, engine, events);
  return { engine, controller };
}

describe('walk-through scenario: Paris, period, 1853-1870', () => {
  it('renders exactly the feature set the API returned for that range', async () => {
    const { engine, controller } = makeApp();
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);

    const apiBody = JSON.parse(SCENARIO) as StreetCollection;
    expect(apiBody.features.length).toBeGreaterThan(0);

    const renderedIds = engine.data.map((d) => d.feature.properties.record_id);
    const expectedIds = apiBody.features.map((f) => f.properties.record_id);
    expect(renderedIds).toEqual(expectedIds);
    expect(controller.lastTotalCount).toBe(apiBody.features.length);
    expect(engine.data.length).toBe(controller.lastTotalCount);
  });

  it('styles the rendered features with the period ramp at city zoom', async () => {
    const { engine, controller } = makeApp();
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);
    for (const styled of engine.data) {
      expect(styled.style.mode).toBe('point'); // zoom 11 < Z1
      expect(styled.style.color).toMatch(/^#/);
    }
  });
});

describe('interaction handlers', () => {
  it('S1 city switch refetches and flies the camera to the city center', async () => {
    const { engine, controller } = makeApp();
    await controller.start();
    await controller.selectCity('vienna');
    expect(controller.state.city).toBe('vienna');
    expect(engine.camera?.center[0]).toBeCloseTo(16.3738, 3);
    expect(engine.camera?.center[1]).toBeCloseTo(48.2082, 3);
  });

  it('S2 theme switch resets tags', async () => {
    const { controller } = makeApp();
    await controller.start();
    await controller.toggleTag('writers');
    expect(controller.state.tags).toEqual(['writers']);
    await controller.selectTheme('gender');
    expect(controller.state.tags).toEqual([]);
  });

  it('S4 tag toggles add and remove tags', async () => {
    const { controller } = makeApp();
    await controller.start();
    await controller.toggleTag('royals');
    await controller.toggleTag('writers');
    expect(controller.state.tags).toEqual(['royals', 'writers']);
    await controller.toggleTag('royals');
    expect(controller.state.tags).toEqual(['writers']);
  });

  it('M1 pop-up carries image, birth date, name and profession', async () => {
    const { controller } = makeApp();
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);
    const popup = controller.clickAt(0, 0);
    expect(popup).not.toBeNull();
    expect(popup!.name.length).toBeGreaterThan(0);
    expect(popup!.profession.length).toBeGreaterThan(0);
    expect(popup!.birthYear).not.toBeNull();
  });

  it('R flies to the random street and opens its pop-up', async () => {
    let popupSeen = false;
    const { engine, controller } = makeApp({ onPopup: () => (popupSeen = true) });
    await controller.start();
    const popup = await controller.randomStreet(7);
    expect(popup).not.toBeNull();
    expect(popupSeen).toBe(true);
    expect(engine.camera!.zoom).toBeGreaterThanOrEqual(15);
  });

  it('network failure keeps the last good layer and raises a toast', async () => {
    const toasts: string[] = [];
    const engine = new RecordingEngine();
    let failNext = false;
    const fetchImpl = async (url: string, init?: { signal?: AbortSignal }) => {
      if (failNext && url.includes('/streets')) throw new Error('offline');
      return fixtureFetch()(url, init);
    };
    const controller = new AppController(new ApiClient('', fetchImpl), engine, {
      onToast: (message) => toasts.push(message),
    });
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);
    const kept = engine.data.length;
    expect(kept).toBeGreaterThan(0);
    failNext = true;
    await controller.setYearRange([1900, 1950]);
    expect(engine.data.length).toBe(kept); // layer retained
    expect(toasts.length).toBe(1);
  });

  it('E1 exports a PNG named after the current view', async () => {
    const { controller } = makeApp();
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);
    const exported = controller.exportPNG();
    expect(exported.dataUrl.startsWith('data:image/png')).toBe(true);
    expect(exported.filename).toBe('cultural-map_paris_period_1853-1870.png');
  });

  it('E2 share url embeds a permalink that restores the view state', async () => {
    const { controller } = makeApp();
    await controller.start();
    await controller.selectTheme('period');
    await controller.setYearRange([1853, 1870]);
    const share = controller.shareUrl('https://maps.example.org/app');
    const url = new URL(share);
    expect(url.hostname).toBe('twitter.com');
    const embedded = new URL(url.searchParams.get('url')!);
    const restored = decodeViewState(embedded.hash)!;
    expect(restored.city).toBe('paris');
    expect(restored.theme).toBe('period');
    expect(restored.yearRange).toEqual([1853, 1870]);
    expect(restored.tags).toEqual(controller.state.tags);
    expect(restored.camera).toEqual(controller.state.camera);
  });
});

describe('start-up', () => {
  it('loads city metadata and applies the default view', async () => {
    const { controller } = makeApp();
    await controller.start();
    expect(controller.cities.length).toBe(4);
    expect(controller.state).toMatchObject({ city: defaultViewState().city });
  });
});
