// Screen-to-image coordinate mapping. The service always receives
// image-pixel coordinates, so CSS scaling/zoom of a canvas must be
// inverted here: a canvas rendered at 2x sends the same payload as 1x.

export interface ImagePoint {
  x: number;
  y: number;
}

export function canvasToImage(
  canvas: HTMLCanvasElement,
  clientX: number,
  clientY: number,
): ImagePoint {
  const rect = canvas.getBoundingClientRect();
  // before layout (or in non-rendering test DOMs) the rect can be empty;
  // fall back to the canvas's intrinsic pixel grid
  const scaleX = rect.width > 0 ? canvas.width / rect.width : 1;
  const scaleY = rect.height > 0 ? canvas.height / rect.height : 1;
  return {
    x: (clientX - rect.left) * scaleX,
    y: (clientY - rect.top) * scaleY,
  };
}
