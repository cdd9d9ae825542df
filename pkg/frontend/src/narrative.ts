// Five sections in a set-up / conflict / resolution arc. The user advances
// through marked entry points; the map mounts when section 4 first opens.

export interface NarrativeSection {
  index: 1 | 2 | 3 | 4 | 5;
  kind: 'preloader' | 'hook' | 'problem' | 'map' | 'denouement';
  title: string;
}

export const SECTIONS: NarrativeSection[] = [
  { index: 1, kind: 'preloader', title: 'Loading the city' },
  { index: 2, kind: 'hook', title: 'An unusual neighbourhood walk' },
  { index: 3, kind: 'problem', title: 'What street names remember' },
  { index: 4, kind: 'map', title: 'The cultural map' },
  { index: 5, kind: 'denouement', title: 'Data, credits and further reading' },
];

export interface NarrativeHooks {
  onEnter?: (section: NarrativeSection) => void;
  onMountMap?: () => void;
}

export class NarrativeFlow {
  private current_: NarrativeSection = SECTIONS[0];
  private mapMounted = false;

  constructor(private hooks: NarrativeHooks = {}) {}

  get current(): NarrativeSection {
    return this.current_;
  }

  goTo(index: number): NarrativeSection {
    const section = SECTIONS.find((s) => s.index === index);
    if (!section) throw new Error(`no narrative section ${index}`);
    this.current_ = section;
    if (section.kind === 'map' && !this.mapMounted) {
      this.mapMounted = true;
      this.hooks.onMountMap?.();
    }
    this.hooks.onEnter?.(section);
    return section;
  }

  /** Advance through the marked entry point of the current section. */
  advance(): NarrativeSection {
    const next = Math.min(5, this.current_.index + 1);
    return this.goTo(next);
  }
}
