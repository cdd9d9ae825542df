// Permalinks and share intents. Nothing posts anywhere; E2 opens a
// pre-filled intent URL and the permalink itself restores the view.

import { ViewState, encodeViewState } from './viewstate';

export function permalink(state: ViewState, baseUrl: string): string {
  const base = baseUrl.split('#')[0];
  return base + encodeViewState(state);
}

export function shareIntentUrl(state: ViewState, baseUrl: string, text?: string): string {
  const params = new URLSearchParams();
  params.set('text', text ?? `Street names of ${state.city} by ${state.theme}`);
  params.set('url', permalink(state, baseUrl));
  return `https://twitter.com/intent/tweet?${params.toString()}`;
}

export function downloadName(state: ViewState): string {
  const range = state.yearRange ? `_${state.yearRange[0]}-${state.yearRange[1]}` : '';
  return `cultural-map_${state.city}_${state.theme}${range}.png`;
}
