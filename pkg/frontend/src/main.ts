// DOM bootstrap: builds the five narrative sections, wires controls to the
// controller, keeps the URL fragment in sync with the view state.

import { ApiClient } from './api';
import { AppController, PopupModel } from './app';
import { CanvasMapEngine } from './mapengine';
import { NarrativeFlow, SECTIONS } from './narrative';
import { CityId, THEMES, ThemeLayer } from './types';
import { decodeViewState, defaultViewState } from './viewstate';

// Build-time configurable API base; same-origin by default because the API
// server also serves this bundle.
const API_BASE = (globalThis as { EPONYMAP_API_BASE?: string }).EPONYMAP_API_BASE ?? '';

const TAG_CHOICES: Record<ThemeLayer, string[]> = {
  occupation: [
    'writers', 'creative_performing_artists', 'royals', 'politicians',
    'military_personnel', 'science_engineering_professionals', 'social_workers',
    'religion_representatives', 'sportsmen', 'other',
  ],
  gender: ['female', 'male', 'unknown'],
  country: ['FR', 'AT', 'GB', 'US', 'DE', 'IT', 'PL', 'unknown'],
  period: [],
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function renderPopup(container: HTMLElement, popup: PopupModel | null): void {
  container.innerHTML = '';
  if (!popup) {
    container.classList.add('hidden');
    return;
  }
  container.classList.remove('hidden');
  const badge = el('div', 'badge');
  if (popup.imageUrl) {
    const img = el('img', 'badge-portrait');
    img.src = popup.imageUrl;
    img.alt = popup.name;
    badge.appendChild(img);
  }
  badge.appendChild(el('h3', 'badge-name', popup.name));
  if (popup.birthYear !== null) {
    badge.appendChild(el('p', 'badge-dob', `born ${popup.birthYear}`));
  }
  badge.appendChild(el('p', 'badge-profession', popup.profession));
  badge.appendChild(el('p', 'badge-street', popup.streetName));
  if (popup.encyclopediaUrl) {
    const link = el('a', 'badge-link', 'encyclopedia entry');
    link.href = popup.encyclopediaUrl;
    link.target = '_blank';
    badge.appendChild(link);
  }
  container.appendChild(badge);
}

async function boot(): Promise<void> {
  const root = document.getElementById('app');
  if (!root) return;

  // narrative shell: five sections, click-through entry points
  const sectionNodes = SECTIONS.map((section) => {
    const node = el('section', `story story-${section.kind}`);
    node.id = `section-${section.index}`;
    node.appendChild(el('h2', 'story-title', section.title));
    root.appendChild(node);
    return node;
  });

  const mapSection = sectionNodes[3];
  const canvas = el('canvas', 'map-canvas');
  canvas.width = 960;
  canvas.height = 640;
  const controls = el('div', 'controls');
  const popupBox = el('div', 'popup hidden');
  const toastBox = el('div', 'toast hidden');
  mapSection.append(controls, canvas, popupBox, toastBox);

  const flow = new NarrativeFlow({
    onEnter: (section) => {
      sectionNodes.forEach((node, i) => node.classList.toggle('active', i === section.index - 1));
    },
  });

  const initial = decodeViewState(location.hash) ?? defaultViewState();
  const engine = new CanvasMapEngine(canvas);
  const controller = new AppController(new ApiClient(API_BASE), engine, {
    onToast: (message) => {
      toastBox.textContent = message;
      toastBox.classList.remove('hidden');
      setTimeout(() => toastBox.classList.add('hidden'), 4000);
    },
    onPopup: (popup) => renderPopup(popupBox, popup),
    onStateChange: (state) => {
      history.replaceState(null, '', controller.permalink(location.href));
      yearLabel.textContent = state.yearRange
        ? `${state.yearRange[0]} - ${state.yearRange[1]}`
        : 'all years';
    },
  }, initial);

  // S1 city selector
  const citySelect = el('select', 'city-select');
  controls.appendChild(citySelect);
  citySelect.addEventListener('change', () => controller.selectCity(citySelect.value as CityId));

  // S2 theme selector
  const themeSelect = el('select', 'theme-select');
  for (const theme of THEMES) {
    const option = el('option', undefined, theme);
    option.value = theme;
    themeSelect.appendChild(option);
  }
  themeSelect.value = initial.theme;
  controls.appendChild(themeSelect);
  themeSelect.addEventListener('change', async () => {
    await controller.selectTheme(themeSelect.value as ThemeLayer);
    renderTags();
  });

  // S3 time slider (two-ended range)
  const fromSlider = el('input', 'year-from') as HTMLInputElement;
  const toSlider = el('input', 'year-to') as HTMLInputElement;
  const yearLabel = el('span', 'year-label', 'all years');
  for (const slider of [fromSlider, toSlider]) {
    slider.type = 'range';
    controls.appendChild(slider);
  }
  controls.appendChild(yearLabel);
  const applySliders = () => {
    const lo = Math.min(Number(fromSlider.value), Number(toSlider.value));
    const hi = Math.max(Number(fromSlider.value), Number(toSlider.value));
    controller.setYearRange([lo, hi]);
  };
  fromSlider.addEventListener('input', applySliders);
  toSlider.addEventListener('input', applySliders);

  // S4 tag toggles
  const tagBox = el('div', 'tags');
  controls.appendChild(tagBox);
  const renderTags = () => {
    tagBox.innerHTML = '';
    for (const tag of TAG_CHOICES[controller.state.theme]) {
      const button = el('button', 'tag', tag);
      button.classList.toggle('on', controller.state.tags.includes(tag));
      button.addEventListener('click', async () => {
        await controller.toggleTag(tag);
        renderTags();
      });
      tagBox.appendChild(button);
    }
  };

  // M1 street click
  canvas.addEventListener('click', (event) => {
    const rect = canvas.getBoundingClientRect();
    controller.clickAt(event.clientX - rect.left, event.clientY - rect.top);
  });

  // M2 zoom / rotate / reset / address search
  const zoomIn = el('button', 'ctl', '+');
  const zoomOut = el('button', 'ctl', '-');
  const rotate = el('button', 'ctl', 'rotate');
  const reset = el('button', 'ctl', 'reset view');
  const search = el('input', 'search') as HTMLInputElement;
  search.placeholder = 'search address';
  controls.append(zoomIn, zoomOut, rotate, reset, search);
  zoomIn.addEventListener('click', () =>
    controller.setCamera(controller.state.camera.center, controller.state.camera.zoom + 1, controller.state.camera.bearing));
  zoomOut.addEventListener('click', () =>
    controller.setCamera(controller.state.camera.center, controller.state.camera.zoom - 1, controller.state.camera.bearing));
  rotate.addEventListener('click', () =>
    controller.setCamera(controller.state.camera.center, controller.state.camera.zoom, (controller.state.camera.bearing + 30) % 360));
  reset.addEventListener('click', () => controller.resetView());
  search.addEventListener('change', async () => {
    // pluggable geocoder: same-origin /geocode?q= endpoint or none
    try {
      const response = await fetch(`${API_BASE}/geocode?q=${encodeURIComponent(search.value)}`);
      if (response.ok) {
        const hit = await response.json();
        if (hit && hit.lon !== undefined) controller.setCamera([hit.lon, hit.lat], 15);
      }
    } catch {
      // geocoder not deployed; address search is optional
    }
  });

  // R random street
  const randomButton = el('button', 'ctl random', 'Random street');
  controls.appendChild(randomButton);
  randomButton.addEventListener('click', () => controller.randomStreet());

  // E1 download picture, E2 share
  const download = el('button', 'ctl', 'Download picture');
  const share = el('button', 'ctl', 'Share');
  controls.append(download, share);
  download.addEventListener('click', () => {
    const { dataUrl, filename } = controller.exportPNG();
    const link = el('a') as HTMLAnchorElement;
    link.href = dataUrl;
    link.download = filename;
    link.click();
  });
  share.addEventListener('click', () => {
    window.open(controller.shareUrl(location.href), '_blank');
  });

  // section advance buttons
  sectionNodes.forEach((node, i) => {
    if (i < SECTIONS.length - 1) {
      const next = el('button', 'advance', 'Continue');
      next.addEventListener('click', () => flow.advance());
      node.appendChild(next);
    }
  });

  flow.goTo(initial.section);
  await controller.start();

  // populate the city selector once /cities answers
  for (const info of controller.cities) {
    const option = el('option', undefined, info.display_name);
    option.value = info.id;
    citySelect.appendChild(option);
  }
  citySelect.value = controller.state.city;
  const info = controller.cities.find((c) => c.id === controller.state.city);
  if (info) {
    fromSlider.min = toSlider.min = String(info.year_range[0]);
    fromSlider.max = toSlider.max = String(info.year_range[1]);
    fromSlider.value = String(info.year_range[0]);
    toSlider.value = String(info.year_range[1]);
  }
  renderTags();
}

boot();
