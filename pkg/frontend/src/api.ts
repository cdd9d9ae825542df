// Thin client over the street API. A new streets request cancels the one
// still in flight, so a fast filter sequence can never apply stale data.

import { CityId, CityInfo, StreetCollection, StreetFeature, ThemeLayer } from './types';

export interface StreetQuery {
  theme: ThemeLayer;
  yearRange: [number, number] | null;
  tags: string[];
}

export interface StreetsResponse {
  collection: StreetCollection;
  totalCount: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public field: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: { signal?: AbortSignal }) => Promise<Response>;

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(
    private baseUrl: string = '',
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private url(path: string, params?: URLSearchParams): string {
    const query = params && [...params.keys()].length ? `?${params.toString()}` : '';
    return `${this.baseUrl}${path}${query}`;
  }

  private static queryParams(query: StreetQuery): URLSearchParams {
    const params = new URLSearchParams();
    params.set('theme', query.theme);
    if (query.yearRange) {
      params.set('from', String(query.yearRange[0]));
      params.set('to', String(query.yearRange[1]));
    }
    if (query.tags.length) params.set('tags', query.tags.join(','));
    return params;
  }

  private async checked(response: Response): Promise<Response> {
    if (response.ok) return response;
    let code = 'http_error';
    let field = '';
    let message = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      code = body.code ?? code;
      field = body.field ?? field;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep defaults
    }
    throw new ApiError(response.status, code, field, message);
  }

  async cities(): Promise<CityInfo[]> {
    const response = await this.checked(await this.fetchImpl(this.url('/cities')));
    return response.json();
  }

  /** Fetch the filtered feature set; supersedes any in-flight streets call. */
  async streets(city: CityId, query: StreetQuery): Promise<StreetsResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await this.checked(
        await this.fetchImpl(this.url(`/cities/${city}/streets`, ApiClient.queryParams(query)), {
          signal: controller.signal,
        }),
      );
      const collection: StreetCollection = await response.json();
      const header = response.headers.get('x-total-count');
      return {
        collection,
        totalCount: header !== null ? Number(header) : collection.features.length,
      };
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async randomStreet(city: CityId, query: StreetQuery, seed?: number): Promise<StreetFeature | null> {
    const params = ApiClient.queryParams(query);
    if (seed !== undefined) params.set('seed', String(seed));
    const response = await this.checked(
      await this.fetchImpl(this.url(`/cities/${city}/streets/random`, params)),
    );
    if (response.status === 204) return null;
    return response.json();
  }

  async stats(city: CityId, theme: ThemeLayer): Promise<{ theme: string; total: number; counts: Record<string, number> }> {
    const params = new URLSearchParams({ theme });
    const response = await this.checked(
      await this.fetchImpl(this.url(`/cities/${city}/stats`, params)),
    );
    return response.json();
  }
}
