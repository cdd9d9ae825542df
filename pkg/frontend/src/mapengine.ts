// Map rendering behind a small engine interface. The canvas engine draws
// the whole scene itself (equirectangular projection around the camera),
// which keeps the bundle dependency-free and makes PNG export a one-liner;
// a WebGL adapter can implement the same interface later.

import { RenderStyle } from './style';
import { Camera, StreetFeature } from './types';

export interface StyledFeature {
  feature: StreetFeature;
  style: RenderStyle;
}

export interface MapEngine {
  setCamera(camera: Camera): void;
  setData(features: StyledFeature[]): void;
  render(): void;
  /** Feature at a screen position, for pop-ups; null when nothing is hit. */
  pick(x: number, y: number): StreetFeature | null;
  toPNG(): string;
}

/** Test double: records everything, draws nothing. */
export class RecordingEngine implements MapEngine {
  camera: Camera | null = null;
  data: StyledFeature[] = [];
  renderCount = 0;

  setCamera(camera: Camera): void {
    this.camera = camera;
  }

  setData(features: StyledFeature[]): void {
    this.data = features;
  }

  render(): void {
    this.renderCount += 1;
  }

  pick(): StreetFeature | null {
    return this.data.length ? this.data[0].feature : null;
  }

  toPNG(): string {
    return 'data:image/png;base64,';
  }
}

const TILE = 256;

export class CanvasMapEngine implements MapEngine {
  private camera: Camera = { center: [0, 0], zoom: 1, bearing: 0 };
  private data: StyledFeature[] = [];
  private hitBoxes: { x: number; y: number; feature: StreetFeature }[] = [];

  constructor(private canvas: HTMLCanvasElement, private background = '#101418') {}

  setCamera(camera: Camera): void {
    this.camera = camera;
  }

  setData(features: StyledFeature[]): void {
    this.data = features;
  }

  private scale(): number {
    return (TILE / 360) * Math.pow(2, this.camera.zoom);
  }

  private project(lon: number, lat: number): [number, number] {
    const k = this.scale();
    const [clon, clat] = this.camera.center;
    const latShrink = Math.cos((clat * Math.PI) / 180);
    let x = (lon - clon) * k;
    let y = (clat - lat) * k * (1 / Math.max(0.2, latShrink));
    const bearing = (-this.camera.bearing * Math.PI) / 180;
    if (bearing !== 0) {
      const rx = x * Math.cos(bearing) - y * Math.sin(bearing);
      const ry = x * Math.sin(bearing) + y * Math.cos(bearing);
      x = rx;
      y = ry;
    }
    return [this.canvas.width / 2 + x, this.canvas.height / 2 + y];
  }

  render(): void {
    const ctx = this.canvas.getContext('2d');
    if (!ctx) return;
    ctx.fillStyle = this.background;
    ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    this.hitBoxes = [];
    for (const { feature, style } of this.data) {
      ctx.globalAlpha = style.opacity;
      if (style.mode === 'point') {
        const point = feature.properties.representative_point;
        if (!point) continue;
        const [x, y] = this.project(point[0], point[1]);
        ctx.fillStyle = style.color;
        ctx.beginPath();
        ctx.arc(x, y, 3, 0, Math.PI * 2);
        ctx.fill();
        this.hitBoxes.push({ x, y, feature });
      } else {
        ctx.strokeStyle = style.color;
        ctx.lineWidth = 2.5;
        const lines =
          feature.geometry.type === 'LineString'
            ? [feature.geometry.coordinates as number[][]]
            : (feature.geometry.coordinates as number[][][]);
        for (const line of lines) {
          ctx.beginPath();
          line.forEach(([lon, lat], i) => {
            const [x, y] = this.project(lon, lat);
            if (i === 0) ctx.moveTo(x, y);
            else ctx.lineTo(x, y);
          });
          ctx.stroke();
        }
        const anchor = feature.properties.representative_point;
        if (anchor) {
          const [x, y] = this.project(anchor[0], anchor[1]);
          this.hitBoxes.push({ x, y, feature });
        }
      }
    }
    ctx.globalAlpha = 1;
  }

  pick(x: number, y: number): StreetFeature | null {
    let best: StreetFeature | null = null;
    let bestDist = 12; // px hit radius
    for (const box of this.hitBoxes) {
      const d = Math.hypot(box.x - x, box.y - y);
      if (d < bestDist) {
        bestDist = d;
        best = box.feature;
      }
    }
    return best;
  }

  toPNG(): string {
    return this.canvas.toDataURL('image/png');
  }
}
