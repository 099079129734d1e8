/** Canvas renderer for scene graphs. Geometry is in court feet; the canvas
 * transform maps the 94 x 50 court onto the element. */

import { SceneNode } from './scene.js';
import { COURT_LENGTH, COURT_WIDTH } from './types.js';

const TEAM_COLORS = { home: '#2f6fce', away: '#d8443c' };

export class CourtRenderer {
  private ctx: CanvasRenderingContext2D;
  private scale: number;

  constructor(private canvas: HTMLCanvasElement) {
    this.ctx = canvas.getContext('2d')!;
    this.scale = canvas.width / COURT_LENGTH;
  }

  private px(x: number): number {
    return x * this.scale;
  }

  render(nodes: SceneNode[], timeMs: number): void {
    const { ctx } = this;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    for (const node of nodes) {
      switch (node.kind) {
        case 'court':
          this.drawCourt();
          break;
        case 'area':
          ctx.fillStyle = 'rgba(80, 200, 120, 0.25)';
          for (const poly of node.polygons) {
            ctx.beginPath();
            poly.forEach(([x, y], i) =>
              i ? ctx.lineTo(this.px(x), this.px(y)) : ctx.moveTo(this.px(x), this.px(y)),
            );
            ctx.closePath();
            ctx.fill();
          }
          break;
        case 'path':
          ctx.strokeStyle = node.dashed ? '#5aa9ff' : '#58d68d';
          ctx.setLineDash(node.dashed ? [6, 5] : []);
          ctx.lineWidth = 2;
          ctx.beginPath();
          node.points.forEach(([x, y], i) =>
            i ? ctx.lineTo(this.px(x), this.px(y)) : ctx.moveTo(this.px(x), this.px(y)),
          );
          ctx.stroke();
          ctx.setLineDash([]);
          break;
        case 'arrow':
          this.drawArrow(node.from, node.to, node.color);
          break;
        case 'circle': {
          const spin = node.rotating ? (timeMs / 400) % (Math.PI * 2) : 0;
          ctx.strokeStyle = node.color;
          ctx.lineWidth = 3;
          ctx.beginPath();
          ctx.arc(this.px(node.x), this.px(node.y), this.px(2.0), spin, spin + Math.PI * 1.5);
          ctx.stroke();
          break;
        }
        case 'wall': {
          const [tx, ty] = [-node.ny, node.nx]; // wall runs perpendicular to the normal
          ctx.strokeStyle = '#f4d03f';
          ctx.lineWidth = 5;
          ctx.beginPath();
          ctx.moveTo(this.px(node.x - tx * 2), this.px(node.y - ty * 2));
          ctx.lineTo(this.px(node.x + tx * 2), this.px(node.y + ty * 2));
          ctx.stroke();
          break;
        }
        case 'player':
          ctx.fillStyle = TEAM_COLORS[node.team];
          ctx.beginPath();
          ctx.arc(this.px(node.x), this.px(node.y), this.px(1.1), 0, Math.PI * 2);
          ctx.fill();
          ctx.fillStyle = '#ffffff';
          ctx.font = `${this.px(1.4)}px sans-serif`;
          ctx.textAlign = 'center';
          ctx.fillText(node.id, this.px(node.x), this.px(node.y - 1.8));
          break;
        case 'ball':
          ctx.fillStyle = '#e67e22';
          ctx.beginPath();
          ctx.arc(this.px(node.x), this.px(node.y), this.px(0.7), 0, Math.PI * 2);
          ctx.fill();
          break;
        case 'bubble':
          this.drawBubble(node.x, node.y, node.placement, node.speaker, node.text);
          break;
      }
    }
  }

  private drawCourt(): void {
    const { ctx } = this;
    ctx.fillStyle = '#21262d';
    ctx.fillRect(0, 0, this.px(COURT_LENGTH), this.px(COURT_WIDTH));
    ctx.strokeStyle = '#4a5568';
    ctx.lineWidth = 1.5;
    ctx.strokeRect(0, 0, this.px(COURT_LENGTH), this.px(COURT_WIDTH));
    ctx.beginPath();
    ctx.moveTo(this.px(COURT_LENGTH / 2), 0);
    ctx.lineTo(this.px(COURT_LENGTH / 2), this.px(COURT_WIDTH));
    ctx.stroke();
    for (const hoopX of [5.25, COURT_LENGTH - 5.25]) {
      ctx.beginPath();
      ctx.arc(this.px(hoopX), this.px(25), this.px(0.75), 0, Math.PI * 2);
      ctx.strokeStyle = '#c0392b';
      ctx.stroke();
      ctx.beginPath();
      ctx.arc(this.px(hoopX), this.px(25), this.px(19 - 5.25), -Math.PI / 2, Math.PI / 2, hoopX > 47);
      ctx.strokeStyle = '#4a5568';
      ctx.stroke();
    }
  }

  private drawArrow(from: [number, number], to: [number, number], color: string): void {
    const { ctx } = this;
    const [x0, y0] = [this.px(from[0]), this.px(from[1])];
    const [x1, y1] = [this.px(to[0]), this.px(to[1])];
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    ctx.lineWidth = 2.5;
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
    const angle = Math.atan2(y1 - y0, x1 - x0);
    const head = this.px(1.2);
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    ctx.lineTo(x1 - head * Math.cos(angle - 0.4), y1 - head * Math.sin(angle - 0.4));
    ctx.lineTo(x1 - head * Math.cos(angle + 0.4), y1 - head * Math.sin(angle + 0.4));
    ctx.closePath();
    ctx.fill();
  }

  private drawBubble(x: number, y: number, placement: 'above' | 'below', speaker: string, text: string): void {
    const { ctx } = this;
    const cx = this.px(x);
    const cy = this.px(y) + (placement === 'above' ? -this.px(4.5) : this.px(4.5));
    const content = `${speaker}: ${text}`;
    ctx.font = `${this.px(1.3)}px sans-serif`;
    const width = Math.min(ctx.measureText(content).width + 14, this.px(40));
    const height = this.px(3);
    ctx.fillStyle = 'rgba(15, 18, 24, 0.92)';
    ctx.strokeStyle = '#8899aa';
    ctx.beginPath();
    ctx.roundRect(cx - width / 2, cy - height / 2, width, height, 6);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = '#f5f6fa';
    ctx.textAlign = 'center';
    ctx.textBaseline = 'middle';
    ctx.fillText(content, cx, cy, width - 10);
    ctx.textBaseline = 'alphabetic';
  }
}
